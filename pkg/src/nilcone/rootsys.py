"""Irreducible root systems of types A-G with exact combinatorial data.

Coordinate conventions
----------------------
Weights are tuples of integers in the fundamental-weight basis ("fw
coordinates"): ``(c_1, ..., c_l)`` stands for ``sum_i c_i omega_i``, and
``c_i`` equals the pairing with the i-th simple coroot.  Simple roots are
numbered as in Bourbaki.  The Cartan matrix is stored with
``cartan[i][j] = <alpha_i, alpha_j^vee>``, so row ``i`` is exactly the fw
coordinate vector of ``alpha_i`` and the fw coordinates of a vector with
root-basis coordinates ``r`` are ``cartan^T r``.

Root-basis coordinates of a general weight are exact rationals; they are
integers precisely on the root lattice.  All arithmetic is exact - ints
and ``fractions.Fraction`` - never floats.

The symmetric bilinear form is normalised so that short roots have
squared length 2 (``inner`` values on the weight lattice are integers).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import InadmissibleTypeError

Weight = tuple[int, ...]
RootVector = tuple[int, ...]

FAMILIES = ("A", "B", "C", "D", "E", "F", "G")

_RANK_RANGE = {
    "A": (1, None),
    "B": (2, None),
    "C": (2, None),
    "D": (3, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}


def admissible(family: str, rank: int) -> bool:
    """Whether (family, rank) names an irreducible root system."""
    if family not in _RANK_RANGE or not isinstance(rank, int):
        return False
    lo, hi = _RANK_RANGE[family]
    return rank >= lo and (hi is None or rank <= hi)


def positive_root_count(family: str, rank: int) -> int:
    """Classical number of positive roots for the type."""
    l = rank
    if family == "A":
        return l * (l + 1) // 2
    if family in ("B", "C"):
        return l * l
    if family == "D":
        return l * (l - 1)
    if family == "E":
        return {6: 36, 7: 63, 8: 120}[l]
    if family == "F":
        return 24
    return 6  # G_2


def coxeter_number(family: str, rank: int) -> int:
    """Classical Coxeter number h for the type."""
    l = rank
    if family == "A":
        return l + 1
    if family in ("B", "C"):
        return 2 * l
    if family == "D":
        return 2 * l - 2
    if family == "E":
        return {6: 12, 7: 18, 8: 30}[l]
    if family == "F":
        return 12
    return 6  # G_2


def weyl_group_order(family: str, rank: int) -> int:
    """Classical order of the Weyl group for the type."""
    l = rank
    if family == "A":
        return factorial(l + 1)
    if family in ("B", "C"):
        return 2**l * factorial(l)
    if family == "D":
        return 2 ** (l - 1) * factorial(l)
    if family == "E":
        return {6: 51840, 7: 2903040, 8: 696729600}[l]
    if family == "F":
        return 1152
    return 12  # G_2


# -- small exact vector helpers ---------------------------------------------

def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vneg(u):
    return tuple(-a for a in u)


def vscale(c, u):
    return tuple(c * a for a in u)


def _cartan_matrix(family: str, rank: int) -> tuple[tuple[int, ...], ...]:
    """Bourbaki Cartan matrix, rows = simple roots in fw coordinates."""
    a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def link(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    if family in ("A", "B", "C"):
        for i in range(rank - 2):
            link(i, i + 1)
        if rank >= 2:
            if family == "A":
                link(rank - 2, rank - 1)
            elif family == "B":     # alpha_l short
                link(rank - 2, rank - 1, aij=-2, aji=-1)
            else:                   # C: alpha_l long
                link(rank - 2, rank - 1, aij=-1, aji=-2)
    elif family == "D":
        for i in range(rank - 3):
            link(i, i + 1)
        link(rank - 3, rank - 2)
        link(rank - 3, rank - 1)
    elif family == "E":
        # Bourbaki: chain 1-3-4-5-6(-7-8), node 2 hangs off node 4.
        for i, j in [(0, 2), (2, 3), (3, 4), (4, 5)]:
            link(i, j)
        link(1, 3)
        for i in range(5, rank - 1):
            link(i, i + 1)
    elif family == "F":
        link(0, 1)
        link(1, 2, aij=-2, aji=-1)  # alpha_1, alpha_2 long; alpha_3, alpha_4 short
        link(2, 3)
    else:                           # G_2: alpha_1 short, alpha_2 long
        link(0, 1, aij=-1, aji=-3)
    return tuple(tuple(row) for row in a)


def _symmetrizer(cartan) -> tuple[int, ...]:
    """Positive integers d with d_j*cartan[i][j] symmetric, short roots d=1."""
    rank = len(cartan)
    d: list[Fraction | None] = [None] * rank
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(rank):
            if i != j and cartan[i][j] != 0 and d[j] is None:
                d[j] = d[i] * cartan[j][i] / cartan[i][j]
                stack.append(j)
    assert all(x is not None and x > 0 for x in d), "Dynkin diagram not connected"
    denom_lcm = 1
    for x in d:
        denom_lcm = denom_lcm * x.denominator // _gcd(denom_lcm, x.denominator)
    ints = [int(x * denom_lcm) for x in d]
    g = 0
    for x in ints:
        g = _gcd(g, x)
    ints = [x // g for x in ints]
    for i in range(rank):
        for j in range(rank):
            assert ints[j] * cartan[i][j] == ints[i] * cartan[j][i]
    return tuple(ints)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _adjugate_of_transpose(cartan) -> tuple[tuple[tuple[int, ...], ...], int]:
    """(adjugate, det) of cartan^T, so inv(cartan^T) = adjugate / det.

    Both are integral; det > 0 for every Cartan matrix.
    """
    n = len(cartan)
    m = [[Fraction(cartan[j][i]) for j in range(n)] for i in range(n)]  # cartan^T
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    det = Fraction(1)
    for col in range(n):
        pivot = next(r for r in range(col, n) if m[r][col] != 0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            inv[col], inv[pivot] = inv[pivot], inv[col]
            det = -det
        det *= m[col][col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        inv[col] = [x / p for x in inv[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    assert det.denominator == 1 and det > 0
    det_i = int(det)
    adj = []
    for row in inv:
        scaled = [x * det_i for x in row]
        assert all(x.denominator == 1 for x in scaled)
        adj.append(tuple(int(x) for x in scaled))
    return tuple(adj), det_i


@dataclass(frozen=True)
class RootSystemId:
    family: str
    rank: int

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


@dataclass(frozen=True)
class RootSystem:
    """Immutable combinatorial datum of an irreducible root system.

    Built via :func:`build`; safe to share across threads and processes.
    """

    id: RootSystemId
    cartan: tuple[tuple[int, ...], ...]
    simple_roots: tuple[Weight, ...]
    positive_roots: tuple[Weight, ...]
    positive_root_coords: tuple[RootVector, ...]
    rho: Weight
    theta_short: Weight
    theta_long: Weight
    theta_short_coords: RootVector
    theta_long_coords: RootVector
    num_positive_roots: int
    coxeter_number: int
    symmetrizer: tuple[int, ...]
    fw_to_root_adj: tuple[tuple[int, ...], ...]
    fw_to_root_det: int

    @property
    def family(self) -> str:
        return self.id.family

    @property
    def rank(self) -> int:
        return self.id.rank

    # -- coordinate conversions ----------------------------------------

    def to_root_basis(self, w) -> tuple[Fraction, ...]:
        """Root-basis coordinates of a weight, as exact rationals."""
        det = self.fw_to_root_det
        return tuple(
            Fraction(sum(row[i] * w[i] for i in range(self.rank)), det)
            for row in self.fw_to_root_adj
        )

    def root_coords_int(self, w) -> RootVector | None:
        """Integer root-basis coordinates, or None if w is off the root lattice."""
        det = self.fw_to_root_det
        out = []
        for row in self.fw_to_root_adj:
            num = sum(row[i] * w[i] for i in range(self.rank))
            if num % det:
                return None
            out.append(num // det)
        return tuple(out)

    def from_root_basis(self, r) -> Weight:
        """fw coordinates of sum_j r_j alpha_j."""
        return tuple(
            sum(r[j] * self.cartan[j][i] for j in range(self.rank))
            for i in range(self.rank)
        )

    # -- predicates and measures ----------------------------------------

    def is_dominant(self, w) -> bool:
        return all(c >= 0 for c in w)

    def in_root_lattice(self, w) -> bool:
        return self.root_coords_int(w) is not None

    def height(self, w) -> Fraction:
        """Sum of root-basis coordinates (rational for general weights)."""
        return sum(self.to_root_basis(w), Fraction(0))

    def dominance_le(self, mu, lam) -> bool:
        """True iff lam - mu has nonnegative integer root-basis coordinates."""
        diff = vsub(lam, mu)
        det = self.fw_to_root_det
        for row in self.fw_to_root_adj:
            num = sum(row[i] * diff[i] for i in range(self.rank))
            if num < 0 or num % det:
                return False
        return True

    # -- bilinear form ---------------------------------------------------

    def inner(self, w, r) -> int:
        """(w, beta) for a weight w (fw coords) and beta = sum r_j alpha_j.

        Integer-valued on weight-lattice w and integral r; short roots
        have squared length 2 in this normalisation.
        """
        d = self.symmetrizer
        return sum(r[j] * d[j] * w[j] for j in range(self.rank))

    def root_norm2(self, r) -> int:
        """Squared length (beta, beta) of a root-lattice vector."""
        return self.inner(self.from_root_basis(r), r)

    def coroot_pairing(self, w, r) -> int:
        """<w, beta^vee> = 2 (w, beta) / (beta, beta) for a root beta."""
        n2 = self.root_norm2(r)
        num = 2 * self.inner(w, r)
        assert num % n2 == 0, "coroot pairing of a weight must be integral"
        return num // n2

    # -- reflections and orbits ------------------------------------------

    def simple_reflection(self, w, i: int) -> Weight:
        """s_i(w) = w - <w, alpha_i^vee> alpha_i, on fw coordinates."""
        c = w[i]
        if c == 0:
            return tuple(w)
        row = self.cartan[i]
        return tuple(w[j] - c * row[j] for j in range(self.rank))

    def dominant_representative(self, w) -> Weight:
        """The unique dominant weight in the W-orbit of w (plain action)."""
        cur = tuple(w)
        while True:
            for i, c in enumerate(cur):
                if c < 0:
                    cur = self.simple_reflection(cur, i)
                    break
            else:
                return cur

    def weight_orbit(self, w) -> tuple[Weight, ...]:
        """The full W-orbit of a weight, sorted, without enumerating W."""
        seen = {tuple(w)}
        frontier = [tuple(w)]
        while frontier:
            nxt = []
            for v in frontier:
                for i in range(self.rank):
                    u = self.simple_reflection(v, i)
                    if u not in seen:
                        seen.add(u)
                        nxt.append(u)
            frontier = nxt
        return tuple(sorted(seen))

    # -- weight sweeps ----------------------------------------------------

    def dominant_below(self, lam) -> tuple[Weight, ...]:
        """Dominant weights mu with lam - mu a nonnegative integer root sum.

        These are exactly the dominant members of the root-lattice coset
        of lam under the dominance order, the sweep domain for graded
        tables.  Sorted by (height, fw coords).
        """
        top = self.to_root_basis(lam)
        if any(x < 0 for x in top):
            return ()
        bounds = [int(x) for x in top]  # floor: dominant weights sit in the cone
        found = []
        offsets = [0] * self.rank

        def rec(j):
            if j == self.rank:
                mu = tuple(
                    lam[i]
                    - sum(offsets[t] * self.cartan[t][i] for t in range(self.rank))
                    for i in range(self.rank)
                )
                if all(c >= 0 for c in mu):
                    found.append(mu)
                return
            for s in range(bounds[j] + 1):
                offsets[j] = s
                rec(j + 1)
            offsets[j] = 0

        rec(0)
        return tuple(sorted(set(found), key=lambda m: (self.height(m), m)))

    def dominant_up_to_height(self, max_height) -> tuple[Weight, ...]:
        """All dominant weights of height <= max_height, sorted."""
        fw_heights = [
            self.height(tuple(int(i == j) for j in range(self.rank)))
            for i in range(self.rank)
        ]
        found = []
        coords = [0] * self.rank

        def rec(j, budget):
            if j == self.rank:
                found.append(tuple(coords))
                return
            c = 0
            while c * fw_heights[j] <= budget:
                coords[j] = c
                rec(j + 1, budget - c * fw_heights[j])
                c += 1
            coords[j] = 0

        rec(0, Fraction(max_height))
        return tuple(sorted(found, key=lambda m: (self.height(m), m)))

    # -- serialisation ----------------------------------------------------

    def to_json_dict(self) -> dict:
        """Root system datum in the documented JSON schema.

        Keys: family, rank, cartan, positive_roots (fw coords), rho,
        theta_short.
        """
        return {
            "family": self.family,
            "rank": self.rank,
            "cartan": [list(row) for row in self.cartan],
            "positive_roots": [list(r) for r in self.positive_roots],
            "rho": list(self.rho),
            "theta_short": list(self.theta_short),
        }


def build(family: str, rank: int) -> RootSystem:
    """Construct the irreducible root system of the given type.

    Raises InadmissibleTypeError for pairs outside A_l (l>=1), B_l (l>=2),
    C_l (l>=2), D_l (l>=3), E_6..E_8, F_4, G_2.
    """
    if not admissible(family, rank):
        raise InadmissibleTypeError(family, rank)
    cartan = _cartan_matrix(family, rank)
    d = _symmetrizer(cartan)
    adj, det = _adjugate_of_transpose(cartan)

    # Reflection closure of the simple roots.  A root is carried as
    # (root coords, fw coords); s_i changes root coordinate i by the i-th
    # fw coordinate and shifts fw coords by a Cartan row.
    simple = []
    for i in range(rank):
        r = tuple(int(i == j) for j in range(rank))
        simple.append((r, cartan[i]))
    seen = {r for r, _ in simple}
    frontier = list(simple)
    while frontier:
        nxt = []
        for r, c in frontier:
            for i in range(rank):
                ci = c[i]
                if ci == 0:
                    continue
                r2 = tuple(r[j] - ci * int(i == j) for j in range(rank))
                if r2 not in seen:
                    seen.add(r2)
                    c2 = tuple(c[j] - ci * cartan[i][j] for j in range(rank))
                    nxt.append((r2, c2))
        frontier = nxt

    positives = sorted(
        (r for r in seen if all(x >= 0 for x in r)),
        key=lambda r: (sum(r), r),
    )
    assert 2 * len(positives) == len(seen)
    expected = positive_root_count(family, rank)
    assert len(positives) == expected, (
        f"{family}_{rank}: built {len(positives)} positive roots, "
        f"classical count is {expected}"
    )

    def to_fw(r):
        return tuple(
            sum(r[j] * cartan[j][i] for j in range(rank)) for i in range(rank)
        )

    pos_fw = tuple(to_fw(r) for r in positives)

    rho = tuple([1] * rank)
    half_sum_doubled = [0] * rank
    for c in pos_fw:
        half_sum_doubled = [a + b for a, b in zip(half_sum_doubled, c)]
    assert tuple(x // 2 for x in half_sum_doubled) == rho
    assert all(x % 2 == 0 for x in half_sum_doubled)

    heights = [sum(r) for r in positives]
    h_max = max(heights)
    longest = [r for r, h in zip(positives, heights) if h == h_max]
    assert len(longest) == 1, "highest root must be unique"
    theta_long_coords = longest[0]
    theta_long = to_fw(theta_long_coords)
    assert all(c >= 0 for c in theta_long)
    assert h_max + 1 == coxeter_number(family, rank)

    def norm2(r):
        fw = to_fw(r)
        return sum(r[j] * d[j] * fw[j] for j in range(rank))

    norms = [norm2(r) for r in positives]
    short_norm = min(norms)
    assert short_norm == 2, "short roots are normalised to squared length 2"
    shorts = [r for r, n in zip(positives, norms) if n == short_norm]
    dominant_shorts = [r for r in shorts if all(c >= 0 for c in to_fw(r))]
    assert len(dominant_shorts) == 1, "dominant short root must be unique"
    theta_short_coords = dominant_shorts[0]
    theta_short = to_fw(theta_short_coords)

    # The dominant short root is dual to the highest coroot: the coroot
    # beta^vee = sum_j (2 r_j d_j / (beta,beta)) alpha_j^vee of theta_short
    # must have strictly maximal height among all coroots.
    def coroot_height(r, n):
        return Fraction(2 * sum(rj * dj for rj, dj in zip(r, d)), n)

    co_heights = [coroot_height(r, n) for r, n in zip(positives, norms)]
    top = max(co_heights)
    top_roots = [r for r, ch in zip(positives, co_heights) if ch == top]
    assert top_roots == [theta_short_coords], (
        "dominant short root must agree with the dual of the highest coroot"
    )

    return RootSystem(
        id=RootSystemId(family, rank),
        cartan=cartan,
        simple_roots=tuple(cartan[i] for i in range(rank)),
        positive_roots=pos_fw,
        positive_root_coords=tuple(positives),
        rho=rho,
        theta_short=theta_short,
        theta_long=theta_long,
        theta_short_coords=theta_short_coords,
        theta_long_coords=theta_long_coords,
        num_positive_roots=len(positives),
        coxeter_number=coxeter_number(family, rank),
        symmetrizer=d,
        fw_to_root_adj=adj,
        fw_to_root_det=det,
    )
