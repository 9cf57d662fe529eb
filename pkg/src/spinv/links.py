"""Framed, colored surgery links: braid closures and closed-form families.

A link is a split union of parts, each either a braid closure or a symbolic
family (an unlink of framed unknots, or a chain of unknots with consecutive
clasps).  Framings are stored as explicit integers per component and enter
the invariant algebraically as q_sq(c)^(-framing); diagrams are always
evaluated at writhe-corrected zero framing, so no kinks are ever drawn.

Braid conventions: generators are 1-based signed integers (+k crosses
strands k, k+1 with a positive crossing), strands are 0-based, and the
strand-to-component map must match the cycle structure of the braid
permutation under trace closure.  Linking numbers are half the signed count
of inter-component crossings.  In the Kauffman variable used here a positive
self-crossing of the closed diagram contributes q_sq(c) to the bracket, so
the zero-framed value is bracket * q_sq(c)^(-writhe).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath

from . import bracket as B
from .recoupling import RecouplingTable
from .theory import omega_sq, q_sq


class LinkFormatError(ValueError):
    """Malformed link description (JSON schema or consistency violation)."""


@dataclass(frozen=True)
class BraidPart:
    """Trace closure of a braid: strand count, word, strand->component map."""
    strands: int
    word: Tuple[int, ...]
    components: Tuple[int, ...]  # local component index per strand, 0-based

    def __post_init__(self):
        if self.strands < 1:
            raise LinkFormatError("braid needs at least one strand")
        if len(self.components) != self.strands:
            raise LinkFormatError("component map length must equal strand count")
        for letter in self.word:
            if letter == 0 or abs(letter) > self.strands - 1:
                raise LinkFormatError(f"braid letter {letter} out of range")
        k = self.num_components
        if sorted(set(self.components)) != list(range(k)):
            raise LinkFormatError("components must be 0..k-1 and surjective")
        # closure cycles must coincide with the declared components
        perm = self.closure_permutation()
        unseen = set(range(self.strands))
        cycle_comps = []
        while unseen:
            s = min(unseen)
            cyc = {s}
            x = perm[s]
            while x != s:
                cyc.add(x)
                x = perm[x]
            unseen -= cyc
            comps = {self.components[y] for y in cyc}
            if len(comps) != 1:
                raise LinkFormatError(
                    f"strands {sorted(cyc)} close into one component but are "
                    f"mapped to components {sorted(comps)}")
            cycle_comps.append(comps.pop())
        if len(cycle_comps) != len(set(cycle_comps)) or len(cycle_comps) != k:
            raise LinkFormatError("component map does not match closure cycles")

    @property
    def num_components(self) -> int:
        return max(self.components) + 1

    def closure_permutation(self) -> List[int]:
        """perm[i] = final position of the strand starting at position i."""
        order = list(range(self.strands))
        for letter in self.word:
            g = abs(letter) - 1
            order[g], order[g + 1] = order[g + 1], order[g]
        # order[pos] = starting strand now at pos; invert
        perm = [0] * self.strands
        for pos, start in enumerate(order):
            perm[start] = pos
        return perm

    def crossing_data(self):
        """Per-letter (component_a, component_b, sign) with strand tracking."""
        order = list(range(self.strands))
        out = []
        for letter in self.word:
            g = abs(letter) - 1
            sa, sb = order[g], order[g + 1]
            out.append((self.components[sa], self.components[sb],
                        1 if letter > 0 else -1))
            order[g], order[g + 1] = order[g + 1], order[g]
        return out

    def self_writhes(self) -> List[int]:
        w = [0] * self.num_components
        for ca, cb, s in self.crossing_data():
            if ca == cb:
                w[ca] += s
        return w

    def linking(self) -> List[List[int]]:
        k = self.num_components
        twice = [[0] * k for _ in range(k)]
        for ca, cb, s in self.crossing_data():
            if ca != cb:
                twice[ca][cb] += s
                twice[cb][ca] += s
        out = [[0] * k for _ in range(k)]
        for i in range(k):
            for j in range(k):
                if twice[i][j] % 2:
                    raise LinkFormatError(
                        "odd inter-component crossing count; broken braid data")
                out[i][j] = twice[i][j] // 2
        return out


@dataclass(frozen=True)
class FamilyPart:
    """Closed-form link family.

    kind "unlink": m split unknots.  kind "hopf_chain": m unknots in a row,
    consecutive ones simply clasped; clasp_signs (default all +1) give the
    linking number of each consecutive pair.
    """
    kind: str
    m: int
    clasp_signs: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in ("unlink", "hopf_chain"):
            raise LinkFormatError(f"unknown family kind {self.kind!r}")
        if self.m < 1:
            raise LinkFormatError("family needs at least one component")
        if self.kind == "hopf_chain":
            signs = self.clasp_signs or tuple([1] * (self.m - 1))
            if len(signs) != self.m - 1 or any(s not in (1, -1) for s in signs):
                raise LinkFormatError("hopf_chain needs m-1 clasp signs of +-1")
            object.__setattr__(self, "clasp_signs", tuple(signs))

    @property
    def num_components(self) -> int:
        return self.m

    def linking(self) -> List[List[int]]:
        out = [[0] * self.m for _ in range(self.m)]
        if self.kind == "hopf_chain":
            for i, s in enumerate(self.clasp_signs):
                out[i][i + 1] = s
                out[i + 1][i] = s
        return out


@dataclass(frozen=True)
class ColoredFramedLink:
    """Split union of parts with per-component integer framings."""
    parts: Tuple[object, ...]
    framings: Tuple[int, ...]

    def __post_init__(self):
        total = sum(p.num_components for p in self.parts)
        if len(self.framings) != total:
            raise LinkFormatError(
                f"{total} components but {len(self.framings)} framings")

    @property
    def num_components(self) -> int:
        return len(self.framings)

    def component_ranges(self) -> List[Tuple[int, int]]:
        """Global [start, end) component index range of each part."""
        out = []
        start = 0
        for p in self.parts:
            out.append((start, start + p.num_components))
            start += p.num_components
        return out


def unknot_link(framing: int) -> ColoredFramedLink:
    return ColoredFramedLink((FamilyPart("unlink", 1),), (framing,))


def unlink(framings: Sequence[int]) -> ColoredFramedLink:
    return ColoredFramedLink((FamilyPart("unlink", len(framings)),),
                             tuple(framings))


def hopf_chain(framings: Sequence[int],
               clasp_signs: Optional[Sequence[int]] = None) -> ColoredFramedLink:
    part = FamilyPart("hopf_chain", len(framings),
                      tuple(clasp_signs) if clasp_signs else ())
    return ColoredFramedLink((part,), tuple(framings))


def braid_link(strands: int, word: Sequence[int], components: Sequence[int],
               framings: Sequence[int]) -> ColoredFramedLink:
    part = BraidPart(strands, tuple(word), tuple(components))
    return ColoredFramedLink((part,), tuple(framings))


def empty_link() -> ColoredFramedLink:
    return ColoredFramedLink((), ())


# ---------------------------------------------------------------------------
# linking matrix and exact signature

def linking_matrix(link: ColoredFramedLink) -> List[List[int]]:
    """Symmetric integer linking matrix; diagonal = framings."""
    m = link.num_components
    out = [[0] * m for _ in range(m)]
    for (start, _), part in zip(link.component_ranges(), link.parts):
        sub = part.linking()
        k = part.num_components
        for i in range(k):
            for j in range(k):
                out[start + i][start + j] = sub[i][j]
    for i in range(m):
        out[i][i] = link.framings[i]
    return out


def signature(Bm: Sequence[Sequence[int]]) -> int:
    """Signature of a symmetric integer matrix, computed exactly.

    Symmetric reduction over the rationals (Sylvester's law of inertia); a
    zero diagonal with a nonzero off-diagonal entry is handled by the
    hyperbolic 2x2 block, which contributes zero.
    """
    n = len(Bm)
    M = [[Fraction(Bm[i][j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        if M[i] and len(M[i]) != n:
            raise ValueError("matrix must be square")
        for j in range(n):
            if Bm[i][j] != Bm[j][i]:
                raise ValueError("matrix must be symmetric")
    sig = 0
    idx = list(range(n))
    while idx:
        pivot = next((i for i in idx if M[i][i] != 0), None)
        if pivot is not None:
            d = M[pivot][pivot]
            sig += 1 if d > 0 else -1
            rest = [i for i in idx if i != pivot]
            for i in rest:
                for j in rest:
                    M[i][j] -= M[i][pivot] * M[pivot][j] / d
            idx = rest
            continue
        off = None
        for i in idx:
            for j in idx:
                if i != j and M[i][j] != 0:
                    off = (i, j)
                    break
            if off:
                break
        if off is None:
            break  # zero block contributes nothing
        a, b = off
        c = M[a][b]
        rest = [i for i in idx if i not in (a, b)]
        # Schur complement of the invertible block [[0, c], [c, 0]].
        for i in rest:
            for j in rest:
                M[i][j] -= (M[i][a] * M[b][j] + M[i][b] * M[a][j]) / c
        idx = rest
    return sig


# ---------------------------------------------------------------------------
# colored invariants

def _twist_eigenvalue(table: RecouplingTable, i: int, j: int, t: int):
    """Eigenvalue of one positive braid crossing on the fusion channel t of
    a pair of strands colored i and j."""
    p = table.params
    k = t * (t + 2) - i * (i + 2) - j * (j + 2)
    with p.workprec():
        return (-1) ** ((i + j - t) // 2) * mpmath.expjpi(
            mpmath.mpf(k) / (4 * p.r))


def split_braid(part: BraidPart) -> List[Tuple[BraidPart, List[int]]]:
    """Decompose a braid part into split sub-braids.

    Strands that are never crossed with each other close up into split
    sublinks; each interaction component automatically occupies a contiguous
    block of positions.  Returns (sub_part, local-to-parent component map)
    pairs.
    """
    n = part.strands
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    order = list(range(n))
    for letter in part.word:
        g = abs(letter) - 1
        sa, sb = order[g], order[g + 1]
        union(sa, sb)
        order[g], order[g + 1] = order[g + 1], order[g]
    # strands of the same declared component close together: unite them too
    by_comp: Dict[int, int] = {}
    for s in range(n):
        c = part.components[s]
        if c in by_comp:
            union(s, by_comp[c])
        else:
            by_comp[c] = s
    groups: Dict[int, List[int]] = {}
    for s in range(n):
        groups.setdefault(find(s), []).append(s)
    if len(groups) == 1:
        return [(part, list(range(part.num_components)))]
    out = []
    for strands in sorted(groups.values(), key=min):
        strands = sorted(strands)
        lo = strands[0]
        if strands != list(range(lo, lo + len(strands))):
            raise LinkFormatError("non-contiguous split block; invalid braid")
        comp_list = sorted({part.components[s] for s in strands})
        comp_map = {c: k for k, c in enumerate(comp_list)}
        word = []
        for letter in part.word:
            g = abs(letter) - 1
            if lo <= g < lo + len(strands) - 1:
                word.append((g - lo + 1) * (1 if letter > 0 else -1))
        sub = BraidPart(len(strands), tuple(word),
                        tuple(comp_map[part.components[s]] for s in strands))
        out.append((sub, comp_list))
    return out


def _braid_bracket(table: RecouplingTable, part: BraidPart,
                   colors: Sequence[int], width_limit: int):
    """Blackboard-framed bracket of the cabled closure."""
    p = table.params
    if part.strands == 1:
        return omega_sq(p, colors[0])
    if part.strands == 2:
        net = sum(1 if letter > 0 else -1 for letter in part.word)
        i, j = (colors[part.components[0]], colors[part.components[1]])
        with p.workprec():
            total = mpmath.mpf(0)
            for t in p.colors:
                if table.admissible(i, j, t):
                    total += omega_sq(p, t) * _twist_eigenvalue(table, i, j, t) ** net
            return total
    strand_colors = [colors[part.components[s]] for s in range(part.strands)]
    jw_strands = []
    seen = set()
    for s in range(part.strands):
        if part.components[s] not in seen:
            seen.add(part.components[s])
            jw_strands.append(s)
    diag = B.braid_closure_diagram(strand_colors, list(part.word), jw_strands)
    return table.bracket(diag, width_limit=width_limit)


def part_zero_framed(table: RecouplingTable, part, colors: Sequence[int],
                     width_limit: int = B.DEFAULT_WIDTH_LIMIT):
    """Zero-framed colored invariant of a single part."""
    p = table.params
    with p.workprec():
        if isinstance(part, FamilyPart):
            if part.kind == "unlink":
                val = mpmath.mpf(1)
                for c in colors:
                    val *= omega_sq(p, c)
                return val
            val = mpmath.mpf(1)
            for a, b in zip(colors, colors[1:]):
                val *= table.hopf(a, b)
            for c in colors[1:-1]:
                val /= omega_sq(p, c)
            return val
        val = mpmath.mpf(1)
        for sub, comp_list in split_braid(part):
            sub_colors = [colors[c] for c in comp_list]
            val *= _braid_bracket(table, sub, sub_colors, width_limit)
            for local, wr in enumerate(sub.self_writhes()):
                if wr:
                    val *= q_sq(p, sub_colors[local]) ** (-wr)
        return val


def colored_invariant(table: RecouplingTable, link: ColoredFramedLink,
                      colors: Sequence[int],
                      width_limit: int = B.DEFAULT_WIDTH_LIMIT):
    """Invariant of the colored framed link: framing factors
    q_sq(c_i)^(-framing_i) times the zero-framed bracket of each part."""
    if len(colors) != link.num_components:
        raise ValueError(
            f"need {link.num_components} colors, got {len(colors)}")
    p = table.params
    with p.workprec():
        val = mpmath.mpf(1)
        for (start, end), part in zip(link.component_ranges(), link.parts):
            val *= part_zero_framed(table, part, colors[start:end], width_limit)
        for c, f in zip(colors, link.framings):
            if f:
                val *= q_sq(p, c) ** (-f)
        return val


def mirror(link: ColoredFramedLink) -> ColoredFramedLink:
    """Mirror image: all crossings and framings reversed."""
    parts = []
    for part in link.parts:
        if isinstance(part, BraidPart):
            parts.append(BraidPart(part.strands,
                                   tuple(-x for x in part.word),
                                   part.components))
        else:
            parts.append(FamilyPart(part.kind, part.m,
                                    tuple(-s for s in part.clasp_signs)))
    return ColoredFramedLink(tuple(parts), tuple(-f for f in link.framings))


def family_to_braid(part: FamilyPart) -> BraidPart:
    """Braid-closure realization of a family part (one strand per component)."""
    n = part.m
    word: List[int] = []
    if part.kind == "hopf_chain":
        for i, s in enumerate(part.clasp_signs):
            word.extend([(i + 1) * (1 if s > 0 else -1)] * 2)
    return BraidPart(n, tuple(word), tuple(range(n)))


def as_single_braid(link: ColoredFramedLink) -> ColoredFramedLink:
    """Rewrite the whole link as one braid part (components side by side)."""
    strands: List[int] = []
    word: List[int] = []
    comps: List[int] = []
    offset_strand = 0
    offset_comp = 0
    for part in link.parts:
        bp = part if isinstance(part, BraidPart) else family_to_braid(part)
        word.extend((abs(x) + offset_strand) * (1 if x > 0 else -1)
                    for x in bp.word)
        comps.extend(c + offset_comp for c in bp.components)
        offset_strand += bp.strands
        offset_comp += bp.num_components
    return ColoredFramedLink(
        (BraidPart(offset_strand, tuple(word), tuple(comps)),),
        link.framings)


# ---------------------------------------------------------------------------
# JSON schema

def link_from_json(obj: dict) -> ColoredFramedLink:
    """Parse the link JSON schema.

    Either {"braid": {"strands": n, "word": [..], "components": [..]},
    "framings": [..]} or {"family": {"kind": "unlink"|"hopf_chain",
    "params": {...}}, "framings": [..]}.  Components are 0-based.
    """
    if not isinstance(obj, dict):
        raise LinkFormatError("link JSON must be an object")
    if "framings" not in obj or not isinstance(obj["framings"], list):
        raise LinkFormatError("link JSON needs a 'framings' array")
    framings = obj["framings"]
    if not all(isinstance(f, int) for f in framings):
        raise LinkFormatError("framings must be integers")
    try:
        if "braid" in obj:
            b = obj["braid"]
            part = BraidPart(int(b["strands"]), tuple(b["word"]),
                             tuple(b["components"]))
            return ColoredFramedLink((part,), tuple(framings))
        if "family" in obj:
            fam = obj["family"]
            kind = fam["kind"]
            params = fam.get("params", {})
            if kind == "unlink":
                part = FamilyPart("unlink", len(framings))
            elif kind == "hopf_chain":
                part = FamilyPart("hopf_chain", len(framings),
                                  tuple(params.get("clasp_signs", ())))
            else:
                raise LinkFormatError(f"unknown family kind {kind!r}")
            return ColoredFramedLink((part,), tuple(framings))
        if not framings:
            return empty_link()
    except LinkFormatError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise LinkFormatError(f"malformed link JSON: {exc}") from exc
    raise LinkFormatError("link JSON needs a 'braid' or 'family' entry")


def link_to_json(link: ColoredFramedLink) -> dict:
    if not link.parts:
        return {"framings": []}
    if len(link.parts) != 1:
        link = as_single_braid(link)
    part = link.parts[0]
    if isinstance(part, BraidPart):
        return {"braid": {"strands": part.strands, "word": list(part.word),
                          "components": list(part.components)},
                "framings": list(link.framings)}
    out = {"family": {"kind": part.kind, "params": {}},
           "framings": list(link.framings)}
    if part.kind == "hopf_chain":
        out["family"]["params"]["clasp_signs"] = list(part.clasp_signs)
    return out
