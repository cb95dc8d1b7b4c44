"""Graded multiplicities for the nilpotent cone and subregular orbit closure.

Everything here is an alternating Weyl sum over the graded partition
counts.  Writing E(lam, mu, n) = sum_w (-1)^w p_n(w.lam - mu):

* nilcone multiplicity   d_n(lam) = E(lam, 0, n)        (Hesselink)
* induced-wall odd part  a_i(lam) = E(lam, theta, i - k) (Andersen-Jantzen)
* subregular multiplicity t_n(lam) = d_n(lam) - a_n(lam)

with theta the dominant short root and k the shift constant
(2k - 1 = length of the reflection in theta).  The positivity of t_n is a
theorem, so a negative value is reported as a hard error, never clamped.

Degrees are polynomial degrees throughout; cohomological degree 2n (even
parts) or 2n - 1 (odd parts) is presentation only and is spelled out in
every table header.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from types import MappingProxyType

from . import partition
from .errors import (
    InternalInconsistencyError,
    PositivityViolationError,
    WrongRootSystemError,
)
from .multiplicity import WeightMultiplicities, weyl_dim
from .rootsys import RootSystem, Weight, build, vscale, vsub
from .weyl import (
    DEFAULT_CAP,
    WeylGroup,
    dot_action,
    enumerate_group,
    shift_constant,
)

DEGREE_CONVENTION = (
    "degrees are polynomial degrees n; even cohomology sits in degree 2n, "
    "odd cohomology in degree 2n-1"
)


class ModuleKind(str, Enum):
    TRIVIAL = "trivial"
    INDUCED_WALL = "induced_wall"
    TILTING = "tilting"
    WEYL = "weyl"
    SIMPLE = "simple"


class Variety(str, Enum):
    NILCONE = "nilcone"
    SUBREGULAR = "subregular"


@dataclass(frozen=True)
class CohomologyTable:
    """Rows of dominant-weight multiplicities per cohomological degree."""

    family: str
    rank: int
    kind: ModuleKind
    k: int
    max_i: int
    sweep: int
    rows: MappingProxyType
    degree_convention: str = DEGREE_CONVENTION

    def row(self, i: int) -> dict[Weight, int]:
        return dict(self.rows.get(i, {}))

    def to_json_dict(self) -> dict:
        return {
            "family": self.family,
            "rank": self.rank,
            "kind": self.kind.value,
            "k": self.k,
            "degree_convention": self.degree_convention,
            "rows": [
                {
                    "i": i,
                    "entries": [
                        {"lambda": list(lam), "mult": m}
                        for lam, m in sorted(self.rows[i].items())
                    ],
                }
                for i in sorted(self.rows)
            ],
        }

    def iter_csv_rows(self):
        """(i, lambda-string, mult) triples, one per nonzero entry."""
        for i in sorted(self.rows):
            for lam, m in sorted(self.rows[i].items()):
                yield i, ",".join(str(c) for c in lam), m

    def parity_ok(self) -> bool:
        """Whether the kind's vanishing pattern holds in every row."""
        if self.kind in (ModuleKind.TRIVIAL, ModuleKind.TILTING):
            bad = 1
        elif self.kind in (ModuleKind.INDUCED_WALL, ModuleKind.SIMPLE):
            bad = 0
        else:
            return True  # Weyl modules live in both parities
        return all(not row for i, row in self.rows.items() if i % 2 == bad)


class GradedCalculator:
    """Bundles a root system with its Weyl group and partition table.

    All methods are pure given the immutable inputs; one calculator can
    serve any number of queries and threads.
    """

    def __init__(
        self,
        rs: RootSystem,
        *,
        cap: int = DEFAULT_CAP,
        group: WeylGroup | None = None,
        table: partition.PartitionTable | None = None,
    ):
        self.rs = rs
        self.group = group if group is not None else enumerate_group(rs, cap)
        self.table = table if table is not None else partition.table_for(rs)
        self.reflection_length = 2 * shift_constant(rs) - 1
        self.k = shift_constant(rs)

    # -- the common alternating kernel ------------------------------------

    def _term_vectors(self, lam, mu):
        """Root coordinates of w.lam - mu per group element, with signs.

        Terms off the nonnegative cone are dropped (they contribute 0);
        if lam - mu is off the root lattice every term is, and the list
        is empty.
        """
        rs = self.rs
        lam, mu = tuple(lam), tuple(mu)
        if rs.root_coords_int(vsub(lam, mu)) is None:
            return []
        out = []
        for w in self.group.elements:
            arg = rs.root_coords_int(vsub(dot_action(rs, w, lam), mu))
            assert arg is not None
            if any(c < 0 for c in arg):
                continue
            out.append((w.sign, arg))
        return out

    def euler_mult(self, lam, mu, n: int) -> int:
        """sum_w (-1)^w p_n(w.lam - mu), the kernel of all graded formulas."""
        if n < 0:
            return 0
        return sum(
            sign * self.table.p(arg, n) for sign, arg in self._term_vectors(lam, mu)
        )

    def _euler_profile(self, lam, mu) -> dict[int, int]:
        """All degrees at once: {n: euler_mult(lam, mu, n)}, zeros dropped."""
        acc: dict[int, int] = {}
        for sign, arg in self._term_vectors(lam, mu):
            for n in range(sum(arg) + 1):
                v = self.table.p(arg, n)
                if v:
                    acc[n] = acc.get(n, 0) + sign * v
        return {n: v for n, v in sorted(acc.items()) if v}

    # -- named multiplicities ----------------------------------------------

    def nilcone_mult(self, lam, n: int) -> int:
        """Multiplicity of L(lam) in degree n of the nilpotent cone ring."""
        value = self.euler_mult(lam, (0,) * self.rs.rank, n)
        if value < 0:
            raise InternalInconsistencyError(
                f"nilcone multiplicity d_{n}({tuple(lam)}) = {value} < 0"
            )
        return value

    def induced_odd_mult(self, lam, i: int) -> int:
        """Multiplicity of L(lam) in odd cohomology degree 2i-1 of the
        wall-induced module; zero for i < k (negative symmetric power)."""
        value = self.euler_mult(lam, self.rs.theta_short, i - self.k)
        if value < 0:
            raise InternalInconsistencyError(
                f"induced-wall multiplicity a_{i}({tuple(lam)}) = {value} < 0"
            )
        return value

    def subregular_mult(self, lam, n: int) -> int:
        """Multiplicity of L(lam) in degree n of the subregular orbit
        closure ring: d_n - a_n, guaranteed nonnegative."""
        value = self.nilcone_mult(lam, n) - self.induced_odd_mult(lam, n)
        if value < 0:
            raise PositivityViolationError(tuple(lam), n, value)
        return value

    # -- whole series --------------------------------------------------------

    def nilcone_series(self, lam) -> dict[int, int]:
        series = self._euler_profile(lam, (0,) * self.rs.rank)
        for n, v in series.items():
            if v < 0:
                raise InternalInconsistencyError(
                    f"nilcone multiplicity d_{n}({tuple(lam)}) = {v} < 0"
                )
        return series

    def induced_series(self, lam) -> dict[int, int]:
        """{i: a_i(lam)} with the shift by k applied."""
        raw = self._euler_profile(lam, self.rs.theta_short)
        series = {m + self.k: v for m, v in raw.items()}
        for i, v in series.items():
            if v < 0:
                raise InternalInconsistencyError(
                    f"induced-wall multiplicity a_{i}({tuple(lam)}) = {v} < 0"
                )
        return series

    def subregular_series(self, lam) -> dict[int, int]:
        d = self.nilcone_series(lam)
        a = self.induced_series(lam)
        series = {}
        for n in sorted(set(d) | set(a)):
            v = d.get(n, 0) - a.get(n, 0)
            if v < 0:
                raise PositivityViolationError(tuple(lam), n, v)
            if v:
                series[n] = v
        return series

    def series(self, variety: Variety, lam) -> dict[int, int]:
        if variety == Variety.NILCONE:
            return self.nilcone_series(lam)
        return self.subregular_series(lam)

    # -- assembled tables ------------------------------------------------------

    def sweep_domain(self, sweep: int) -> tuple[Weight, ...]:
        """Dominant weights dominance-below sweep * theta_long."""
        return self.rs.dominant_below(vscale(sweep, self.rs.theta_long))

    def cohomology_table(
        self, kind: ModuleKind, sweep: int, max_i: int
    ) -> CohomologyTable:
        """Assemble rows H^i -> {lam: mult} for one module kind.

        Row conventions per kind (n, i are polynomial degrees):
          trivial       H^{2n}   = d_n          (odd rows vanish)
          tilting       H^{2n}   = t_n          (odd rows vanish)
          induced_wall  H^{2i-1} = a_i          (even rows vanish)
          weyl          H^{2n}   = t_n,  H^{2n+1} = d_n
          simple        H^{2i+1} = d_i + a_{i+1} (even rows vanish)
        """
        kind = ModuleKind(kind)
        rows: dict[int, dict[Weight, int]] = {i: {} for i in range(max_i + 1)}

        def put(i, lam, v):
            if v and 0 <= i <= max_i:
                rows[i][lam] = rows[i].get(lam, 0) + v

        for lam in self.sweep_domain(sweep):
            if kind == ModuleKind.TRIVIAL:
                for n, v in self.nilcone_series(lam).items():
                    put(2 * n, lam, v)
            elif kind == ModuleKind.TILTING:
                for n, v in self.subregular_series(lam).items():
                    put(2 * n, lam, v)
            elif kind == ModuleKind.INDUCED_WALL:
                for i, v in self.induced_series(lam).items():
                    put(2 * i - 1, lam, v)
            elif kind == ModuleKind.WEYL:
                for n, v in self.subregular_series(lam).items():
                    put(2 * n, lam, v)
                for n, v in self.nilcone_series(lam).items():
                    put(2 * n + 1, lam, v)
            else:  # SIMPLE
                d = self.nilcone_series(lam)
                a = self.induced_series(lam)
                for i in sorted(set(d) | {j - 1 for j in a}):
                    put(2 * i + 1, lam, d.get(i, 0) + a.get(i + 1, 0))

        frozen = MappingProxyType({i: dict(r) for i, r in rows.items()})
        return CohomologyTable(
            family=self.rs.family,
            rank=self.rs.rank,
            kind=kind,
            k=self.k,
            max_i=max_i,
            sweep=sweep,
            rows=frozen,
        )

    def hilbert_series(self, variety: Variety, max_degree: int) -> list[int]:
        """Dimension of each graded piece of the chosen coordinate ring.

        Coefficient n sums mult * dim L(lam) over the dominant lam that
        the support bounds allow: lam dominance-below n*theta_long with
        height(lam) >= n.
        """
        variety = Variety(variety)
        coeffs = []
        for n in range(max_degree + 1):
            total = 0
            for lam in self.rs.dominant_below(vscale(n, self.rs.theta_long)):
                if self.rs.height(lam) < n:
                    continue
                if variety == Variety.NILCONE:
                    c = self.nilcone_mult(lam, n)
                else:
                    c = self.subregular_mult(lam, n)
                if c:
                    total += c * weyl_dim(self.rs, lam)
            coeffs.append(total)
        return coeffs


def a2_tilting_euler(rs: RootSystem, lam) -> int:
    """Signed multiplicity of L(lam) in the Euler characteristic of the
    cohomology of the A_2 tilting module with highest weight 3*omega_2:
    m_lam(3 omega_2) + m_lam(0) - 2 m_lam(omega_1 + omega_2).

    Only defined for A_2; can be negative, which is exactly the failure
    of parity vanishing this module exhibits.
    """
    if (rs.family, rs.rank) != ("A", 2):
        raise WrongRootSystemError(
            f"the tilting example is specific to A_2, got {rs.id}"
        )
    table = WeightMultiplicities(rs, lam)
    return table.at((0, 3)) + table.at((0, 0)) - 2 * table.at((1, 1))


# -- parallel sweeps -----------------------------------------------------------
#
# Sweeps are embarrassingly parallel over lam.  Workers rebuild their own
# calculator (cheap for enumerable types) and return plain tuples; the
# parent assembles results in the deterministic sweep order regardless of
# completion order.

_worker_calc: GradedCalculator | None = None
_worker_key: tuple | None = None


def _calculator_for(family: str, rank: int, cap: int) -> GradedCalculator:
    global _worker_calc, _worker_key
    key = (family, rank, cap)
    if _worker_key != key:
        _worker_calc = GradedCalculator(build(family, rank), cap=cap)
        _worker_key = key
    return _worker_calc


def _series_job(args):
    family, rank, cap, variety, lam = args
    calc = _calculator_for(family, rank, cap)
    return lam, sorted(calc.series(Variety(variety), lam).items())


def parallel_series(
    calc: GradedCalculator, variety: Variety, lams, jobs: int = 1
) -> list[tuple[Weight, dict[int, int]]]:
    """Series for many weights, optionally across processes.

    Output order always follows the input order; jobs <= 1 stays in
    process.
    """
    lams = [tuple(l) for l in lams]
    if jobs <= 1 or len(lams) <= 1:
        return [(lam, calc.series(variety, lam)) for lam in lams]
    rs = calc.rs
    args = [(rs.family, rs.rank, calc.group.cap, Variety(variety).value, lam)
            for lam in lams]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = dict(pool.map(_series_job, args))
    return [(lam, dict(results[lam])) for lam in lams]
