"""Exact GF(2) linear algebra plus the spin-structure bookkeeping built on it.

Vectors over GF(2) are plain ints used as bitsets (bit j = coordinate j),
matrices are lists of row bitsets.  Everything here is exact integer
arithmetic; no floating point is ever involved in characteristic-sublink
solving, Arf invariants or cohomology ranks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple


class SpinStructureError(ValueError):
    """Raised when a GF(2) vector fails to be a characteristic solution."""


# ---------------------------------------------------------------------------
# core bitset elimination

def gf2_rank(rows: Sequence[int], ncols: int) -> int:
    """Rank over GF(2) via Gaussian elimination on bitset rows."""
    work = list(rows)
    rank = 0
    row_idx = 0
    for col in range(ncols):
        pivot = None
        for r in range(row_idx, len(work)):
            if (work[r] >> col) & 1:
                pivot = r
                break
        if pivot is None:
            continue
        work[row_idx], work[pivot] = work[pivot], work[row_idx]
        for r in range(len(work)):
            if r != row_idx and ((work[r] >> col) & 1):
                work[r] ^= work[row_idx]
        rank += 1
        row_idx += 1
        if row_idx == len(work):
            break
    return rank


def gf2_solve(rows: Sequence[int], ncols: int, rhs: Sequence[int]):
    """Solve A x = b over GF(2).

    ``rows`` are the rows of A as bitsets over ncols columns, ``rhs`` the
    right-hand side bits.  Returns ``(particular, kernel_basis)`` with the
    particular solution as a bitset, or ``(None, kernel_basis)`` when the
    system is inconsistent.
    """
    aug = [rows[i] | (int(rhs[i]) << ncols) for i in range(len(rows))]
    pivots: List[int] = []
    row_idx = 0
    for col in range(ncols):
        pivot = None
        for r in range(row_idx, len(aug)):
            if (aug[r] >> col) & 1:
                pivot = r
                break
        if pivot is None:
            continue
        aug[row_idx], aug[pivot] = aug[pivot], aug[row_idx]
        for r in range(len(aug)):
            if r != row_idx and ((aug[r] >> col) & 1):
                aug[r] ^= aug[row_idx]
        pivots.append(col)
        row_idx += 1
    for r in range(row_idx, len(aug)):
        if aug[r] >> ncols:
            return None, _kernel_from_pivots(aug[:row_idx], pivots, ncols)
    particular = 0
    for k, col in enumerate(pivots):
        if (aug[k] >> ncols) & 1:
            particular |= 1 << col
    return particular, _kernel_from_pivots(aug[:row_idx], pivots, ncols)


def _kernel_from_pivots(reduced: List[int], pivots: List[int], ncols: int) -> List[int]:
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = 1 << free
        for k, col in enumerate(pivots):
            if (reduced[k] >> free) & 1:
                vec |= 1 << col
        basis.append(vec)
    return basis


def gf2_nullspace(rows: Sequence[int], ncols: int) -> List[int]:
    """Basis of the right kernel of the bitset-row matrix."""
    _, kernel = gf2_solve(rows, ncols, [0] * len(rows))
    return kernel


def gf2_in_span(vec: int, basis: Sequence[int], ncols: int) -> bool:
    """Whether ``vec`` lies in the GF(2) span of ``basis``."""
    return gf2_rank(list(basis) + [vec], ncols) == gf2_rank(basis, ncols)


def bits_to_tuple(vec: int, n: int) -> Tuple[int, ...]:
    return tuple((vec >> j) & 1 for j in range(n))


def tuple_to_bits(t: Sequence[int]) -> int:
    vec = 0
    for j, b in enumerate(t):
        if b & 1:
            vec |= 1 << j
    return vec


# ---------------------------------------------------------------------------
# characteristic sublinks of a linking matrix

def characteristic_sublinks(B: Sequence[Sequence[int]]) -> List[Tuple[int, ...]]:
    """All GF(2) solutions x of B x = diag(B) (mod 2), sorted.

    Each solution is the coefficient vector of a characteristic sublink: the
    components i with x_i = 1 form a sublink K with L_i.K = L_i.L_i mod 2
    for every i.  For a symmetric integer B the system is always solvable
    (diag(B) pairs to zero against the mod-2 kernel); an empty solution set
    would mean a non-spin surgered manifold and is reported as a bug.
    """
    m = len(B)
    if m == 0:
        return [()]
    rows = [sum(((B[i][j] & 1) << j) for j in range(m)) for i in range(m)]
    rhs = [B[i][i] & 1 for i in range(m)]
    particular, kernel = gf2_solve(rows, m, rhs)
    if particular is None:
        raise AssertionError(
            "B x = diag(B) inconsistent over GF(2); linking matrix is not "
            "symmetric-integer or there is a solver bug")
    sols = []
    for mask in range(1 << len(kernel)):
        v = particular
        for k, basis_vec in enumerate(kernel):
            if (mask >> k) & 1:
                v ^= basis_vec
        sols.append(bits_to_tuple(v, m))
    return sorted(sols)


def is_characteristic(B: Sequence[Sequence[int]], x: Sequence[int]) -> bool:
    """Check L_i.K = L_i.L_i mod 2 for all rows i."""
    m = len(B)
    if len(x) != m:
        return False
    for i in range(m):
        if (sum(B[i][j] * (x[j] & 1) for j in range(m)) - B[i][i]) % 2:
            return False
    return True


def spin_eval_curve(B: Sequence[Sequence[int]], x: Sequence[int],
                    framing: int, links: Sequence[int]) -> int:
    """Evaluate the spin structure encoded by x on a framed curve.

    The curve is given by its framing and its vector of linking numbers with
    the surgery components.  With s(m_j) = 1 - x_j on the meridians, the
    evaluation reduces mod 2 to 1 + framing + sum_j links_j * x_j.
    """
    m = len(B)
    if len(links) != m:
        raise ValueError(f"need {m} linking numbers, got {len(links)}")
    if not is_characteristic(B, x):
        raise SpinStructureError(f"{tuple(x)} is not characteristic for this matrix")
    total = 1 + framing + sum(links[j] * (x[j] & 1) for j in range(m))
    return total % 2


# ---------------------------------------------------------------------------
# surface spin structures and the Arf invariant

@dataclass(frozen=True)
class SurfaceSpinStructure:
    """Quadratic-form values of a spin structure on a genus-g surface.

    qa[i], qb[i] in GF(2) are the values of the induced quadratic form on
    the i-th symplectic pair of the canonical homology basis.
    """
    qa: Tuple[int, ...]
    qb: Tuple[int, ...]

    def __post_init__(self):
        if len(self.qa) != len(self.qb):
            raise ValueError("qa and qb must have equal length")
        if any(v not in (0, 1) for v in self.qa + self.qb):
            raise ValueError("qa/qb entries must be 0 or 1")

    @property
    def genus(self) -> int:
        return len(self.qa)


def arf(sigma: SurfaceSpinStructure) -> int:
    """Arf invariant sum_i qa_i * qb_i mod 2."""
    return sum(a * b for a, b in zip(sigma.qa, sigma.qb)) % 2


def all_spin_structures(g: int) -> List[SurfaceSpinStructure]:
    """The 4^g spin structures on a genus-g surface, in lexicographic order."""
    if g < 1:
        raise ValueError("genus must be >= 1")
    out = []
    for amask in range(1 << g):
        for bmask in range(1 << g):
            out.append(SurfaceSpinStructure(
                bits_to_tuple(amask, g), bits_to_tuple(bmask, g)))
    return out


def arf_census(g: int) -> Tuple[int, int]:
    """Counts (number with Arf 0, number with Arf 1) among all 4^g structures."""
    c0 = c1 = 0
    for sigma in all_spin_structures(g):
        if arf(sigma):
            c1 += 1
        else:
            c0 += 1
    return c0, c1


# ---------------------------------------------------------------------------
# Z2 cohomology of a cell complex in degree one

def h1_data(d0_rows: Sequence[int], d1_rows: Sequence[int], n_edges: int):
    """Cocycle/coboundary bases of a cell complex in degree 1.

    ``d0_rows`` are vertex rows (bitsets over edges, mod-2 incidence of each
    vertex in each edge), ``d1_rows`` face rows (mod-2 incidence of each edge
    in each face boundary).  Returns ``(h_basis, b_basis)``: coboundary
    representatives extending to a cocycle basis, and the coboundary basis
    itself, so that H^1 has dimension ``len(h_basis)``.
    """
    cocycles = gf2_nullspace(list(d1_rows), n_edges)
    b_basis = _row_space_basis(d0_rows, n_edges)
    h_basis = []
    current = list(b_basis)
    rank = gf2_rank(current, n_edges)
    for z in cocycles:
        if gf2_rank(current + [z], n_edges) > rank:
            current.append(z)
            h_basis.append(z)
            rank += 1
    return h_basis, b_basis


def _row_space_basis(rows: Sequence[int], ncols: int) -> List[int]:
    basis: List[int] = []
    rank = 0
    for row in rows:
        if row and gf2_rank(basis + [row], ncols) > rank:
            basis.append(row)
            rank += 1
    return basis


def h1_basis(complex_like):
    """H^1(.; Z2) basis of any object exposing ``coboundary_rows()``.

    The object must return ``(d0_rows, d1_rows, n_edges)`` in the bitset
    encoding above; generalized triangulations in :mod:`spinv.statesum` do.
    """
    d0_rows, d1_rows, n_edges = complex_like.coboundary_rows()
    h_basis, _ = h1_data(d0_rows, d1_rows, n_edges)
    return h_basis


def class_of_cocycle(cochain: int, h_basis: Sequence[int],
                     b_basis: Sequence[int], n_edges: int) -> Tuple[int, ...]:
    """Coordinates of a cocycle in the H^1 basis.

    Solves cochain = sum lambda_i h_i + (coboundary) and returns the lambda
    bits.  Raises ValueError for a cochain outside the cocycle space.
    """
    cols = list(h_basis) + list(b_basis)
    # Transpose into a column system over the unknown coefficients.
    rows = []
    rhs = []
    for e in range(n_edges):
        row = 0
        for k, col in enumerate(cols):
            if (col >> e) & 1:
                row |= 1 << k
        rows.append(row)
        rhs.append((cochain >> e) & 1)
    sol, _ = gf2_solve(rows, len(cols), rhs)
    if sol is None:
        raise ValueError("cochain is not a cocycle of this complex")
    return bits_to_tuple(sol, len(h_basis))
