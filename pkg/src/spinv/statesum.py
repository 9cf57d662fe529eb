"""Triangulation state sums on closed 3-manifolds and their cohomological
refinements.

A generalized triangulation is a set of tetrahedra with all 4t faces glued
in pairs (self-identifications allowed); the quotient cell complex may have
very few vertices, so small manifolds need only one to three tetrahedra.
Tetrahedron vertices are labelled 0..3, face f is the face opposite vertex
f, and a gluing attaches face f of tetrahedron t to face perm[f] of
tetrahedron t' by the vertex bijection perm.

The state sum runs over admissible colorings of the edge orbits:

    Z(T) = omega^(-2 V) * sum over colorings of
           prod_{edge orbits} omega_sq(color) * prod_{tets} sixj(...),

with V the number of vertex orbits and the 6j slots filled by the edge
colors in the standard position (e01, e02, e12, e23, e13, e03), so that
opposite tetrahedron edges land in paired slots.  For a closed manifold
this equals |tau|^2 of any surgery presentation of the same manifold.

The parity of an admissible coloring is a Z2 1-cocycle on the quotient
complex; restricting the state sum to colorings in a fixed cohomology class
h gives the refined sum Z(T, h) with sum_h Z(T, h) = Z(T).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath

from . import gf2
from .recoupling import RecouplingTable
from .theory import omega_sq


class TriangulationError(ValueError):
    """Inconsistent or non-manifold gluing data."""


_FACE_VERTICES = {f: tuple(v for v in range(4) if v != f) for f in range(4)}
_EDGES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
# 6j slot order (a, b, e, c, d, f) = colors of edges 01, 02, 12, 23, 13, 03:
# opposite edge pairs (01|23), (02|13), (12|03) land in paired slots.
_SLOT_EDGES = ((0, 1), (0, 2), (1, 2), (2, 3), (1, 3), (0, 3))


class _UnionFind:
    def __init__(self):
        self.parent: Dict[object, object] = {}

    def find(self, x):
        p = self.parent.setdefault(x, x)
        if p != x:
            self.parent[x] = self.find(p)
        return self.parent[x]

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


@dataclass
class GeneralizedTriangulation:
    """Face-glued tetrahedra with their derived quotient cell complex."""

    gluings: Tuple[Tuple[Optional[Tuple[int, int, Tuple[int, int, int, int]]], ...], ...]

    def __post_init__(self):
        n = len(self.gluings)
        if n == 0:
            raise TriangulationError("need at least one tetrahedron")
        for t in range(n):
            if len(self.gluings[t]) != 4:
                raise TriangulationError(f"tetrahedron {t} needs 4 face gluings")
            for f in range(4):
                g = self.gluings[t][f]
                if g is None:
                    raise TriangulationError(
                        f"face {f} of tetrahedron {t} is unglued; "
                        "manifold must be closed")
                t2, f2, perm = g
                if not (0 <= t2 < n and 0 <= f2 < 4):
                    raise TriangulationError(f"gluing target ({t2},{f2}) invalid")
                if sorted(perm) != [0, 1, 2, 3]:
                    raise TriangulationError(f"invalid vertex bijection {perm}")
                if perm[f] != f2:
                    raise TriangulationError(
                        f"gluing of ({t},{f}) must send vertex {f} to {f2}")
                # involution consistency
                back = self.gluings[t2][f2]
                if back is None:
                    raise TriangulationError("asymmetric gluing table")
                t3, f3, perm3 = back
                inv = [0] * 4
                for v in range(4):
                    inv[perm[v]] = v
                if (t3, f3) != (t, f) or tuple(perm3) != tuple(inv):
                    raise TriangulationError(
                        f"gluing of ({t},{f}) is not matched by its partner")
        self._build_quotient()

    # -- quotient complex -----------------------------------------------------

    def _build_quotient(self):
        n = len(self.gluings)
        vuf, euf, fuf = _UnionFind(), _UnionFind(), _UnionFind()
        for t in range(n):
            for f in range(4):
                t2, f2, perm = self.gluings[t][f]
                fuf.union((t, f), (t2, f2))
                for v in _FACE_VERTICES[f]:
                    vuf.union((t, v), (t2, perm[v]))
                for (a, b) in _EDGES:
                    if f in (a, b):
                        continue
                    e2 = tuple(sorted((perm[a], perm[b])))
                    euf.union((t, (a, b)), (t2, e2))

        def orbits(uf, cells):
            reps: Dict[object, int] = {}
            out = {}
            for c in cells:
                root = uf.find(c)
                if root not in reps:
                    reps[root] = len(reps)
                out[c] = reps[root]
            return out, len(reps)

        cells_v = [(t, v) for t in range(n) for v in range(4)]
        cells_e = [(t, e) for t in range(n) for e in _EDGES]
        cells_f = [(t, f) for t in range(n) for f in range(4)]
        self.vertex_orbit, self.num_vertices = orbits(vuf, cells_v)
        self.edge_orbit, self.num_edges = orbits(euf, cells_e)
        self.face_orbit, self.num_faces = orbits(fuf, cells_f)
        self.num_tets = n
        if self.euler_characteristic() != 0:
            raise TriangulationError(
                f"Euler characteristic {self.euler_characteristic()} != 0; "
                "not a closed 3-manifold")
        self._check_orientable()
        # per-tetrahedron edge orbits in 6j slot order
        self.tet_slots = tuple(
            tuple(self.edge_orbit[(t, e)] for e in _SLOT_EDGES)
            for t in range(n))
        # representative faces (one per orbit) with their edge orbits
        seen = set()
        tris = []
        for t in range(n):
            for f in range(4):
                k = self.face_orbit[(t, f)]
                if k in seen:
                    continue
                seen.add(k)
                vs = _FACE_VERTICES[f]
                edges = [self.edge_orbit[(t, tuple(sorted((vs[i], vs[j]))))]
                         for i, j in ((0, 1), (0, 2), (1, 2))]
                tris.append(tuple(edges))
        self.triangles = tuple(tris)

    def euler_characteristic(self) -> int:
        return (self.num_vertices - self.num_edges
                + self.num_faces - self.num_tets)

    def _check_orientable(self):
        # orientations +-1 per tetrahedron; a gluing by an odd permutation
        # preserves consistency, an even one flips it
        def parity(perm):
            p = 0
            for i in range(4):
                for j in range(i + 1, 4):
                    if perm[i] > perm[j]:
                        p ^= 1
            return p

        orient = [0] * self.num_tets  # 0 unknown else +-1
        orient[0] = 1
        stack = [0]
        while stack:
            t = stack.pop()
            for f in range(4):
                t2, _, perm = self.gluings[t][f]
                want = orient[t] * (1 if parity(perm) else -1)
                if orient[t2] == 0:
                    orient[t2] = want
                    stack.append(t2)
                elif orient[t2] != want:
                    raise TriangulationError("triangulation is not orientable")
        if any(o == 0 for o in orient):
            raise TriangulationError("triangulation is not connected")

    # -- Z2 cohomology ---------------------------------------------------------

    def coboundary_rows(self):
        """(vertex rows, face rows, n_edges) for GF(2) cohomology in degree 1.

        Vertex row v: bitset over edge orbits with odd vertex-edge incidence;
        face row: bitset of its boundary edge orbits with odd multiplicity.
        """
        d0 = [0] * self.num_vertices
        counts: Dict[Tuple[int, int], int] = {}
        seen_edges = set()
        for t in range(self.num_tets):
            for (a, b) in _EDGES:
                k = self.edge_orbit[(t, (a, b))]
                if k in seen_edges:
                    continue
                seen_edges.add(k)
                for v in (a, b):
                    vk = self.vertex_orbit[(t, v)]
                    counts[(vk, k)] = counts.get((vk, k), 0) + 1
        for (vk, k), c in counts.items():
            if c % 2:
                d0[vk] |= 1 << k
        d1 = []
        for tri in self.triangles:
            row = 0
            for k in tri:
                row ^= 1 << k
            d1.append(row)
        return d0, d1, self.num_edges

    def h1_data(self):
        d0, d1, ne = self.coboundary_rows()
        return gf2.h1_data(d0, d1, ne)

    def h1_rank(self) -> int:
        return len(self.h1_data()[0])


def triangulation_from_json(obj: dict) -> GeneralizedTriangulation:
    """Parse {"tets": n, "gluings": [[[t, f, [perm]], ...4 entries...], ...]}."""
    if not isinstance(obj, dict) or "tets" not in obj or "gluings" not in obj:
        raise TriangulationError("triangulation JSON needs 'tets' and 'gluings'")
    n = obj["tets"]
    gl = obj["gluings"]
    if not isinstance(gl, list) or len(gl) != n:
        raise TriangulationError(f"'gluings' must list {n} tetrahedra")
    table = []
    for t in range(n):
        if not isinstance(gl[t], list) or len(gl[t]) != 4:
            raise TriangulationError(f"tetrahedron {t} needs 4 entries")
        row = []
        for f in range(4):
            entry = gl[t][f]
            try:
                t2, f2, perm = entry
                row.append((int(t2), int(f2), tuple(int(x) for x in perm)))
            except (TypeError, ValueError) as exc:
                raise TriangulationError(
                    f"bad gluing entry at tet {t} face {f}: {entry!r}") from exc
        table.append(tuple(row))
    return GeneralizedTriangulation(tuple(table))


def triangulation_to_json(T: GeneralizedTriangulation) -> dict:
    return {"tets": T.num_tets,
            "gluings": [[[t2, f2, list(perm)] for (t2, f2, perm) in row]
                        for row in T.gluings]}


def load_triangulation(path: str) -> GeneralizedTriangulation:
    with open(path) as fh:
        return triangulation_from_json(json.load(fh))


# ---------------------------------------------------------------------------
# state sums

def enumerate_edge_colorings(table: RecouplingTable,
                             T: GeneralizedTriangulation):
    """Yield admissible colorings (tuples over edge orbits), depth first
    with admissibility propagation on completed triangles."""
    p = table.params
    colors = list(p.colors)
    # order edges so triangles complete as early as possible
    order: List[int] = []
    placed = set()
    tris = sorted(T.triangles, key=lambda tri: len(set(tri)))
    for tri in tris:
        for k in tri:
            if k not in placed:
                placed.add(k)
                order.append(k)
    for k in range(T.num_edges):
        if k not in placed:
            placed.add(k)
            order.append(k)
    pos = {k: idx for idx, k in enumerate(order)}
    # triangle check schedule: a triangle is checked when its last edge is set
    schedule: List[List[Tuple[int, int, int]]] = [[] for _ in range(T.num_edges)]
    for tri in T.triangles:
        last = max(pos[k] for k in tri)
        schedule[last].append(tri)

    assign: Dict[int, int] = {}

    def rec(depth: int):
        if depth == T.num_edges:
            yield tuple(assign[k] for k in range(T.num_edges))
            return
        k = order[depth]
        for c in colors:
            assign[k] = c
            if all(table.admissible(assign[t[0]], assign[t[1]], assign[t[2]])
                   for t in schedule[depth]):
                yield from rec(depth + 1)
        del assign[k]

    yield from rec(0)


def tv_state_sum(table: RecouplingTable, T: GeneralizedTriangulation):
    """Turaev-Viro state sum of a closed generalized triangulation."""
    p = table.params
    with p.workprec():
        total = mpmath.mpf(0)
        for col in enumerate_edge_colorings(table, T):
            total += _coloring_weight(table, T, col)
        return total * p.omega2 ** (-T.num_vertices)


def _coloring_weight(table: RecouplingTable, T: GeneralizedTriangulation,
                     col: Sequence[int]):
    p = table.params
    val = mpmath.mpf(1)
    for k in range(T.num_edges):
        val *= omega_sq(p, col[k])
    for slots in T.tet_slots:
        val = val * table.sixj(*(col[k] for k in slots))
    return val


def parity_cocycle(T: GeneralizedTriangulation, col: Sequence[int]) -> int:
    """The mod-2 edge cochain of a coloring, as a bitset over edge orbits.

    Asserts the cocycle condition: every triangle has an even color sum.
    """
    z = 0
    for k, c in enumerate(col):
        if c % 2:
            z |= 1 << k
    for tri in T.triangles:
        if (col[tri[0]] + col[tri[1]] + col[tri[2]]) % 2:
            raise AssertionError(
                f"coloring parity is not a cocycle on triangle {tri}")
    return z


def coloring_class(T: GeneralizedTriangulation, col: Sequence[int],
                   h_data=None) -> Tuple[int, ...]:
    """H^1 coordinates of a coloring's parity cocycle."""
    if h_data is None:
        h_data = T.h1_data()
    h_basis, b_basis = h_data
    return gf2.class_of_cocycle(parity_cocycle(T, col), h_basis, b_basis,
                                T.num_edges)


def tv_refined(table: RecouplingTable, T: GeneralizedTriangulation,
               h: Sequence[int]):
    """State sum restricted to colorings with parity class h.

    ``h`` is a coordinate vector in the H^1 basis returned by ``h1_data``.
    """
    h_data = T.h1_data()
    h_basis, _ = h_data
    if len(h) != len(h_basis):
        raise ValueError(
            f"class vector must have length {len(h_basis)}, got {len(h)}")
    target = tuple(b & 1 for b in h)
    p = table.params
    with p.workprec():
        total = mpmath.mpf(0)
        for col in enumerate_edge_colorings(table, T):
            if coloring_class(T, col, h_data) == target:
                total += _coloring_weight(table, T, col)
        return total * p.omega2 ** (-T.num_vertices)


def realized_classes(table: RecouplingTable, T: GeneralizedTriangulation):
    """Set of H^1 classes realized by admissible colorings."""
    h_data = T.h1_data()
    out = set()
    for col in enumerate_edge_colorings(table, T):
        out.add(coloring_class(T, col, h_data))
    return out
