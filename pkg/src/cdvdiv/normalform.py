"""Classification of cDV hypersurface germs and reduction to normal form.

Target shapes (coefficients of the structural monomials stay arbitrary
nonzero rationals, since normalizing them to 1 would need radicals):

  cD_n : x^2 + y^2 z + z^(n-1) + sum a_i z^(i-1) t^(b_i) + a_n y t^(b_n)
  cE6  : x^2 + y^3 + z^4 + pure/mixed (z,t) terms with z-power <= 2
         + y-linear terms with z-power <= 2
  cE7  : x^2 + y^3 + y z^3 + (z,t) terms with z-power < k, z^k
         + y-linear terms with z-power <= 1
  cE8  : x^2 + y^3 + z^5 + (z,t) terms with z-power <= 3
         + y-linear terms with z-power <= 3

The reduction is the constructive one: complete the square to remove every
x-monomial except x^2 (an inverse-square-root power series handles x-powers
above 1), use the structural cubic monomials to sweep away disallowed y- and
z-monomials, and normalize the cubic part by exact linear changes first.
Every applied coordinate change is recorded and replayable, so certificates
can be verified independently.  Type detection routes on exact data: the
rank of the quadratic form, the factorization pattern of the ternary cubic
(reduced / double line / triple line), and the first nonzero of the
classical sequence (quartic pure part, cubic y-linear part, quintic pure
part) for the three cE flavours.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from cdvdiv.factorize import rational_factors
from cdvdiv.poly import (
    ExponentVector,
    Polynomial,
    Substitution,
    VARS,
    VAR_INDEX,
    apply_substitution,
    grlex_key,
    total_degree,
)

X2: ExponentVector = (2, 0, 0, 0)
Y2Z: ExponentVector = (0, 2, 1, 0)
Y3: ExponentVector = (0, 3, 0, 0)
YZ3: ExponentVector = (0, 1, 3, 0)
Z4: ExponentVector = (0, 0, 4, 0)
Z5: ExponentVector = (0, 0, 5, 0)


class ReductionError(Exception):
    """The reduction cannot reach (or certify) a normal form."""


@dataclass(frozen=True)
class SingularityType:
    kind: str  # cA | cD | cE6 | cE7 | cE8 | smooth | other
    n: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("cA", "cD", "cE6", "cE7", "cE8", "smooth", "other"):
            raise ValueError(f"unknown singularity kind {self.kind!r}")
        if self.kind == "cA" and (self.n is None or self.n < 1):
            raise ValueError("cA needs a parameter n >= 1")
        if self.kind == "cD" and (self.n is None or self.n < 4):
            raise ValueError("cD needs a parameter n >= 4")
        if self.kind in ("cE6", "cE7", "cE8", "smooth", "other") and self.n is not None:
            raise ValueError(f"{self.kind} takes no parameter")

    def label(self) -> str:
        return f"{self.kind}_{self.n}" if self.n is not None else self.kind


@dataclass(frozen=True)
class ConstraintCheck:
    name: str
    holds: bool


@dataclass(frozen=True)
class NormalFormCertificate:
    type: SingularityType
    reduced: Polynomial
    applied_changes: Tuple[Substitution, ...]
    satisfied_constraints: Tuple[ConstraintCheck, ...]
    truncation_degree: int
    notes: Tuple[str, ...] = ()


def default_truncation(f: Polynomial) -> int:
    """Default truncation: twice the top degree plus a safety margin."""
    return 2 * max(2, f.degree()) + 4


def replay(original: Polynomial, certificate: NormalFormCertificate) -> Polynomial:
    """Re-apply the recorded substitutions; must reproduce `reduced` exactly."""
    current = original.truncate(certificate.truncation_degree)
    for sub in certificate.applied_changes:
        current = apply_substitution(current, sub)
    return current


# ---------------------------------------------------------------------------
# Reduction engine
# ---------------------------------------------------------------------------


class _Reducer:
    def __init__(self, f: Polynomial, truncation: int):
        self.current = f.truncate(truncation)
        self.truncation = truncation
        self.changes: List[Substitution] = []
        # Safety net only: cycling is caught by the revisit cap in the
        # elimination loop.  Shears that expose structural monomials can
        # legitimately spray offenders across the whole degree range, so the
        # budget scales with the truncation.
        self.budget = 10 * max(4, len(f.terms)) + 20 * truncation
        self.notes: List[str] = []

    def apply(self, sub: Substitution) -> None:
        if self.budget <= 0:
            worst = min(self.current.support(), key=grlex_key)
            raise ReductionError(
                f"iteration budget exhausted while reducing (near monomial "
                f"{worst}); raise the truncation or check the input"
            )
        self.budget -= 1
        self.changes.append(sub)
        self.current = apply_substitution(self.current, sub)

    def single(self, var: str, replacement: Polynomial) -> None:
        self.apply(Substitution.single(var, replacement, self.truncation))

    def coefficient(self, exps: ExponentVector) -> Fraction:
        return self.current.coefficient(exps)


def _quadratic_matrix(f: Polynomial) -> List[List[Fraction]]:
    q = [[Fraction(0)] * 4 for _ in range(4)]
    for exps, coeff in f.items():
        if total_degree(exps) != 2:
            continue
        idx = [i for i in range(4) for _ in range(exps[i])]
        i, j = idx
        if i == j:
            q[i][i] = coeff
        else:
            q[i][j] += coeff / 2
            q[j][i] += coeff / 2
    return q


def _diagonalize_quadratic(red: _Reducer) -> List[int]:
    """Make the degree-2 part diagonal by linear changes; return carriers."""
    active = [0, 1, 2, 3]
    carriers: List[int] = []
    for _ in range(12):
        q = _quadratic_matrix(red.current)
        pivot = next((i for i in active if q[i][i] != 0), None)
        if pivot is None:
            cross = next(
                (
                    (i, j)
                    for i in active
                    for j in active
                    if i < j and q[i][j] != 0
                ),
                None,
            )
            if cross is None:
                break
            i, j = cross
            red.single(VARS[i], Polynomial.variable(VARS[i]) + Polynomial.variable(VARS[j]))
            continue
        off = [j for j in active if j != pivot and q[pivot][j] != 0]
        if off:
            repl = Polynomial.variable(VARS[pivot])
            for j in off:
                repl = repl - Polynomial.variable(VARS[j]).scale(
                    q[pivot][j] / q[pivot][pivot]
                )
            red.single(VARS[pivot], repl)
        carriers.append(pivot)
        active.remove(pivot)
    else:
        raise ReductionError("quadratic diagonalization did not settle")
    return carriers


def _permute_variables(red: _Reducer, order: Sequence[int]) -> None:
    """Relabel variables so that old variable order[i] becomes variable i."""
    if list(order) == [0, 1, 2, 3]:
        return
    repls: List[Polynomial] = [Polynomial.zero()] * 4
    for new_slot, old_slot in enumerate(order):
        repls[old_slot] = Polynomial.variable(VARS[new_slot])
    red.apply(Substitution(tuple(repls), red.truncation))


def _binomial_half_series(u: Polynomial, truncation: int) -> Polynomial:
    """Truncated power series of (1 + u)^(-1/2); u must have min degree >= 1."""
    series = Polynomial.constant(1)
    coeff = Fraction(1)
    power = Polynomial.constant(1)
    max_j = truncation // max(1, u.min_degree()) + 1
    for j in range(1, max_j + 1):
        coeff = coeff * Fraction(-(2 * j - 1), 2 * j)
        power = (power * u).truncate(truncation)
        if power.is_zero():
            break
        series = series + power.scale(coeff)
    return series.truncate(truncation)


def _eliminate_square_variable(red: _Reducer, var_index: int) -> None:
    """Remove every monomial containing the variable except its pure square.

    Works in rounds, each a single substitution: complete the square against
    the whole linear-in-v part at once (v <- v - L/(2c)), then absorb all
    higher v-powers through one inverse-square-root series
    (v <- v (1 + U)^(-1/2)).  Every round at least doubles the headroom of
    the lowest offender, so only O(log truncation) substitutions are needed.
    """
    square = tuple(2 if i == var_index else 0 for i in range(4))
    name = VARS[var_index]
    previous_min = None
    while True:
        offenders = [
            e for e in red.current.support() if e[var_index] >= 1 and e != square
        ]
        if not offenders:
            return
        lowest = grlex_key(min(offenders, key=grlex_key))
        if previous_min is not None and lowest <= previous_min:
            raise ReductionError(f"no progress while eliminating {name}-monomials")
        previous_min = lowest
        c = red.coefficient(square)
        if c == 0:
            raise ReductionError(
                f"cannot remove {min(offenders)}: the square {name}^2 is missing"
            )
        linear = {}
        higher = {}
        for e in offenders:
            coeff = red.coefficient(e)
            if e[var_index] == 1:
                rest = tuple(0 if i == var_index else e[i] for i in range(4))
                linear[rest] = coeff
            else:
                u_exps = tuple(e[i] - square[i] for i in range(4))
                higher[u_exps] = coeff / c
        # Batch the phase the lowest offender belongs to; the other phase's
        # terms are untouched at first order, so this is what guarantees the
        # strict progress checked above.
        lin_min = min(
            (grlex_key(e) for e in offenders if e[var_index] == 1), default=None
        )
        if lin_min is not None and lin_min == lowest:
            repl = Polynomial.variable(name) - Polynomial(linear).scale(
                Fraction(1, 2) / c
            )
        else:
            series = _binomial_half_series(Polynomial(higher), red.truncation)
            repl = (Polynomial.variable(name) * series).truncate(red.truncation)
        red.single(name, repl)


def _part(f: Polynomial, predicate) -> Polynomial:
    return Polynomial({e: c for e, c in f.items() if predicate(e)})


def _cubic_part(f: Polynomial) -> Polynomial:
    return _part(f, lambda e: e[0] == 0 and total_degree(e) == 3)


def _pure_zt_degrees(f: Polynomial) -> List[int]:
    return [
        total_degree(e)
        for e in f.support()
        if e[0] == 0 and e[1] == 0 and total_degree(e) > 0
    ]


def _linear_change(red: _Reducer, rows: List[List[Fraction]]) -> None:
    """Change (y, z, t) so that the form with coefficients rows[i] becomes
    the (i+1)-th variable; rows must be an invertible 3x3 matrix."""
    inv = _invert3(rows)
    repls = [Polynomial.variable("x")]
    for i in range(3):
        repl = Polynomial.zero()
        for j in range(3):
            if inv[i][j]:
                repl = repl + Polynomial.variable(VARS[1 + j]).scale(inv[i][j])
        repls.append(repl)
    sub = Substitution(tuple(repls), red.truncation)
    if not sub.is_identity():
        red.apply(sub)


def _invert3(rows: List[List[Fraction]]) -> List[List[Fraction]]:
    a = [[Fraction(v) for v in row] + [Fraction(int(i == k)) for k in range(3)]
         for i, row in enumerate(rows)]
    for col in range(3):
        pivot = next((r for r in range(col, 3) if a[r][col] != 0), None)
        if pivot is None:
            raise ReductionError("singular linear change requested")
        a[col], a[pivot] = a[pivot], a[col]
        scale = a[col][col]
        a[col] = [v / scale for v in a[col]]
        for r in range(3):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [v - factor * w for v, w in zip(a[r], a[col])]
    return [row[3:] for row in a]


def _linear_coeffs(linear: Polynomial) -> List[Fraction]:
    """Coefficients of a linear form in (y, z, t)."""
    coeffs = [Fraction(0)] * 3
    for exps, c in linear.items():
        if total_degree(exps) != 1 or exps[0] != 0:
            raise ReductionError(f"not a linear form in y,z,t: {linear}")
        coeffs[exps[1:].index(1)] = c
    return coeffs


def _complete_to_basis(form: List[Fraction], fixed_first: bool = False):
    """Rows of an invertible matrix whose first (or second) row is `form`."""
    units = [[Fraction(int(i == k)) for k in range(3)] for i in range(3)]
    pivot = next(i for i in range(3) if form[i] != 0)
    others = [units[i] for i in range(3) if i != pivot]
    if fixed_first:
        # Keep y fixed; the form becomes the z-slot.
        if form[0] != 0 and all(form[i] == 0 for i in (1, 2)):
            raise ReductionError("cofactor line is proportional to y")
        pivot = next(i for i in (1, 2) if form[i] != 0)
        keep = 2 if pivot == 1 else 1
        return [units[0], form, units[keep]]
    return [form] + others


def _shear_until(
    red: _Reducer,
    target: ExponentVector,
    preserve: Tuple[ExponentVector, ...] = (),
    max_lambda: int = 64,
) -> None:
    """Expose the structural monomial `target` (make its coefficient nonzero).

    Tries the z <-> t swap first (the cheap case of a mislabelled input),
    then shears t <- t + lam*z with increasing integer lam.  A candidate is
    only accepted if the monomials in `preserve` keep nonzero coefficients.
    """
    if red.coefficient(target) != 0:
        return
    swap = Substitution(
        (
            Polynomial.variable("x"),
            Polynomial.variable("y"),
            Polynomial.variable("t"),
            Polynomial.variable("z"),
        ),
        red.truncation,
    )
    swapped = apply_substitution(red.current, swap)
    if swapped.coefficient(target) != 0 and all(
        swapped.coefficient(e) != 0 for e in preserve if red.coefficient(e) != 0
    ):
        red.apply(swap)
        red.notes.append(
            f"swapped z and t to expose the structural monomial {target}"
        )
        return
    for lam in range(1, max_lambda + 1):
        probe = apply_substitution(
            red.current,
            Substitution.single(
                "t",
                Polynomial.variable("t") + Polynomial.variable("z").scale(lam),
                red.truncation,
            ),
        )
        if probe.coefficient(target) != 0 and all(
            probe.coefficient(e) != 0 for e in preserve if red.coefficient(e) != 0
        ):
            red.single(
                "t", Polynomial.variable("t") + Polynomial.variable("z").scale(lam)
            )
            red.notes.append(
                f"sheared t <- t + {lam}*z to expose the structural monomial "
                f"{target}"
            )
            return
    raise ReductionError(f"could not expose structural monomial {target}")


def _run_elimination(red: _Reducer, offender, killer) -> None:
    # Corrections of one kill may revive an already-killed lower offender
    # (structural monomials share variables, and allowed monomials below the
    # structural level feed back one level per round), so progress is
    # policed by a per-monomial revisit cap scaled to the truncation depth
    # rather than by strict grlex monotonicity; a genuine cycle keeps
    # hitting the same monomials beyond any level count.
    cap = red.truncation + 6
    kill_counts: Dict[ExponentVector, int] = {}
    while True:
        offenders = [e for e in red.current.support() if offender(e, red.current)]
        if not offenders:
            return
        m = min(offenders, key=grlex_key)
        kill_counts[m] = kill_counts.get(m, 0) + 1
        if kill_counts[m] > cap:
            raise ReductionError(
                f"elimination is cycling near monomial {m}; the input is "
                "outside the certified reduction moves"
            )
        killer(red, m)


def _kill_with_struct(red: _Reducer, struct: ExponentVector, var_index: int, m):
    """Shear the struct variable to cancel the target monomial(s).

    With struct = v^k * w (v the sheared variable), the replacement
    v <- v - (a / (k c)) * m / (v^(k-1) w) removes m exactly at first order;
    since the first-order effect is linear, a whole batch of monomials
    served by the same (struct, v) pair is removed by one substitution
    (their cross terms land at strictly higher grlex order).
    """
    members = m if isinstance(m, list) else [m]
    c = red.coefficient(struct)
    if c == 0:
        raise ReductionError(
            f"cannot eliminate {members[0]}: structural monomial {struct} is missing"
        )
    k = struct[var_index]
    shift = {}
    for member in members:
        delta = [member[i] - struct[i] for i in range(4)]
        delta[var_index] += 1
        if any(d < 0 for d in delta):
            raise ReductionError(f"{member} is not divisible by {struct} / v")
        shift[tuple(delta)] = red.coefficient(member) / (k * c)
    name = VARS[var_index]
    repl = Polynomial.variable(name) - Polynomial(shift)
    red.single(name, repl)


# ---------------------------------------------------------------------------
# Type-specific elimination rule tables
# ---------------------------------------------------------------------------


def _cd_parameters(g: Polynomial) -> Tuple[Optional[int], Optional[int]]:
    """(pure_min, n) for the current cD-shaped polynomial."""
    pure = _pure_zt_degrees(g)
    pure_min = min(pure) if pure else None
    y_ts = [
        e[3]
        for e in g.support()
        if e[0] == 0 and e[1] == 1 and e[2] == 0 and e[3] >= 1
    ]
    candidates = []
    if pure_min is not None:
        candidates.append(pure_min + 1)
    if y_ts:
        candidates.append(2 * min(y_ts))
    n = min(candidates) if candidates else None
    return pure_min, n


def _cd_offender(e: ExponentVector, g: Polynomial) -> bool:
    if e in (X2, Y2Z):
        return False
    a, b, c, d = e
    if a:
        return True
    if b >= 2:
        return True
    if b == 1:
        return c >= 1
    pure_min, _n = _cd_parameters(g)
    if pure_min is None:
        return False
    struct = (0, 0, pure_min, 0)
    return c >= pure_min and e != struct


def _cd_killer(red: _Reducer, m: ExponentVector) -> bool:
    a, b, c, _d = m
    if a:
        _eliminate_square_variable(red, 0)
        return True
    g = red.current

    def batch(pred):
        return [e for e in g.support() if _cd_offender(e, g) and pred(e)]

    if b >= 1 and c >= 1:
        # y- and z-divisible: the y-shear leaves the z-structural monomials
        # alone, so these kills cannot feed the pure-z kills below.
        _kill_with_struct(red, Y2Z, 1, batch(lambda e: e[1] >= 1 and e[2] >= 1))
        return True
    if b >= 2:
        # z-free: the z-shear through y^2 z has z-free correction terms.
        _kill_with_struct(red, Y2Z, 2, batch(lambda e: e[1] >= 2 and e[2] == 0))
        return True
    pure_min, _ = _cd_parameters(red.current)
    struct = (0, 0, pure_min, 0)
    if red.coefficient(struct) == 0:
        _shear_until(red, struct, preserve=(Y2Z,))
        return False  # re-evaluate offenders against the new support
    _kill_with_struct(
        red, struct, 2, batch(lambda e: e[1] == 0 and e[2] >= pure_min)
    )
    return True


def _ce_offender_common(e: ExponentVector) -> Optional[bool]:
    if e in (X2, Y3):
        return False
    if e[0]:
        return True
    if e[1] >= 2:
        return True
    return None


def _ce6_offender(e: ExponentVector, g: Polynomial) -> bool:
    common = _ce_offender_common(e)
    if common is not None:
        return common
    return e[2] >= 3 and e != Z4


def _ce6_killer(red: _Reducer, m: ExponentVector) -> bool:
    if m[0]:
        _eliminate_square_variable(red, 0)
        return True
    g = red.current
    if m[1] >= 2:
        members = [e for e in g.support() if _ce6_offender(e, g) and e[1] >= 2]
        _kill_with_struct(red, Y3, 1, members)
        return True
    if red.coefficient(Z4) == 0:
        _shear_until(red, Z4, preserve=(Y3, YZ3))
        return False
    members = [
        e for e in g.support() if _ce6_offender(e, g) and e[1] < 2 and e[2] >= 3
    ]
    _kill_with_struct(red, Z4, 2, members)
    return True


def _ce7_offender(e: ExponentVector, g: Polynomial) -> bool:
    common = _ce_offender_common(e)
    if common is not None:
        return common
    if e[1] == 1:
        return e[2] >= 2 and e != YZ3
    pure = [d for d in g.support() if d[0] == 0 and d[1] == 0 and d[3] == 0 and d[2] > 0]
    if not pure:
        return False
    k = min(d[2] for d in pure)
    return e[2] >= k and e != (0, 0, k, 0) and e[1] == 0 and (e[2] > 0)


def _ce7_killer(red: _Reducer, m: ExponentVector) -> bool:
    if m[0]:
        _eliminate_square_variable(red, 0)
        return True
    g = red.current
    if m[1] >= 2:
        members = [e for e in g.support() if _ce7_offender(e, g) and e[1] >= 2]
        _kill_with_struct(red, Y3, 1, members)
        return True
    if m[1] == 1:
        if red.coefficient(YZ3) == 0:
            raise ReductionError(
                f"cannot eliminate {m}: structural monomial y*z^3 is missing"
            )
        members = [
            e for e in g.support() if _ce7_offender(e, g) and e[1] == 1 and e[2] >= 2
        ]
        _kill_with_struct(red, YZ3, 2, members)
        return True
    pure = [
        d
        for d in g.support()
        if d[0] == 0 and d[1] == 0 and d[3] == 0 and d[2] > 0
    ]
    k = min(d[2] for d in pure)
    members = [
        e for e in g.support() if _ce7_offender(e, g) and e[1] == 0 and e[2] >= k
    ]
    _kill_with_struct(red, (0, 0, k, 0), 2, members)
    return True


def _ce8_offender(e: ExponentVector, g: Polynomial) -> bool:
    common = _ce_offender_common(e)
    if common is not None:
        return common
    return e[2] >= 4 and e != Z5


def _ce8_killer(red: _Reducer, m: ExponentVector) -> bool:
    if m[0]:
        _eliminate_square_variable(red, 0)
        return True
    g = red.current
    if m[1] >= 2:
        members = [e for e in g.support() if _ce8_offender(e, g) and e[1] >= 2]
        _kill_with_struct(red, Y3, 1, members)
        return True
    if red.coefficient(Z5) == 0:
        _shear_until(red, Z5, preserve=(Y3, YZ3))
        return False
    members = [
        e for e in g.support() if _ce8_offender(e, g) and e[1] < 2 and e[2] >= 4
    ]
    _kill_with_struct(red, Z5, 2, members)
    return True


# ---------------------------------------------------------------------------
# Shape verification
# ---------------------------------------------------------------------------


def _cd_shape(g: Polynomial):
    pure_min, n = _cd_parameters(g)
    if n is None or n < 4:
        return None, [], f"no transverse (z,t) or y*t monomials (n undetermined)"
    checks = [
        ConstraintCheck("x appears only as x^2", True),
        ConstraintCheck(
            f"n = {n} from pure (z,t) minimum {pure_min} and y*t contributions", True
        ),
    ]
    for e in g.support():
        a, b, c, d = e
        if e in (X2, Y2Z):
            continue
        if a:
            return None, [], f"leftover x-monomial {e}"
        if b >= 2 or (b == 1 and c >= 1):
            return None, [], f"disallowed y-monomial {e}"
        if b == 1:
            continue  # y*t^d, the a_n y t^(b_n) slot
        if c + d < n - 1:
            return None, [], f"(z,t)-monomial {e} below the n-1 level"
        if d == 0 and c != pure_min:
            return None, [], f"extra pure z-power {e}"
        checks.append(
            ConstraintCheck(f"z^{c}*t^{d}: (i-1)+b_i = {c + d} >= {n - 1}", True)
        )
    return SingularityType("cD", n), checks, None


def _ce_shape(kind: str, g: Polynomial):
    struct_z = {"cE6": Z4, "cE7": None, "cE8": Z5}[kind]
    bound = {"cE6": 4, "cE7": 5, "cE8": 5}[kind]
    max_mixed_z = {"cE6": 2, "cE7": 1, "cE8": 3}[kind]
    checks = [ConstraintCheck("x appears only as x^2", True)]
    k = None
    if kind == "cE7":
        pure = [e for e in g.support() if e[0] == 0 and e[1] == 0 and e[3] == 0 and e[2] > 0]
        if pure:
            k = min(e[2] for e in pure)
            checks.append(ConstraintCheck(f"pure z-power k = {k} >= 5", k >= 5))
            if k < 5:
                return None, [], f"pure z-power z^{k} too low for {kind}"
    for e in g.support():
        a, b, c, d = e
        if e in (X2, Y3):
            continue
        if kind == "cE6" and e == Z4:
            continue
        if kind == "cE8" and e == Z5:
            continue
        if kind == "cE7" and e == YZ3:
            continue
        if kind == "cE7" and k is not None and e == (0, 0, k, 0):
            continue
        if a:
            return None, [], f"leftover x-monomial {e}"
        if b >= 2:
            return None, [], f"disallowed y-monomial {e}"
        if b == 1:
            if c > max_mixed_z or d == 0:
                return None, [], f"disallowed y-linear monomial {e}"
            continue
        # pure/mixed (z,t)
        if kind in ("cE6", "cE8"):
            if c > max_mixed_z:
                return None, [], f"(z,t)-monomial {e} with z-power above {max_mixed_z}"
            if c + d < bound:
                return None, [], f"(z,t)-monomial {e} below the level {bound}"
            checks.append(
                ConstraintCheck(f"z^{c}*t^{d}: (i-1)+b_i = {c + d} >= {bound}", True)
            )
        else:  # cE7
            if k is not None and c >= k:
                return None, [], f"(z,t)-monomial {e} with z-power >= k = {k}"
            if c + d < 4:
                return None, [], f"(z,t)-monomial {e} below the quartic level"
    sig = SingularityType(kind)
    return sig, checks, None


# ---------------------------------------------------------------------------
# Main entry points
# ---------------------------------------------------------------------------


@dataclass
class _Outcome:
    type: SingularityType
    certificate: Optional[NormalFormCertificate]


def _route_cubic(red: _Reducer) -> str:
    """Normalize the cubic part and return the branch: 'cD4', 'cDn', 'cE'."""
    g3 = _cubic_part(red.current)
    if g3.is_zero():
        raise ReductionError("cubic part vanishes: multiplicity above cDV range")
    _const, factors = rational_factors(g3)
    triple = next((f for f, m in factors if m >= 3), None)
    double = next((f for f, m in factors if m == 2), None)
    if triple is not None:
        if triple.degree() != 1:
            raise ReductionError("unexpected repeated non-linear cubic factor")
        rows = _complete_to_basis(_linear_coeffs(triple))
        _linear_change(red, rows)
        g3 = _cubic_part(red.current)
        if g3.support() != (Y3,):
            raise ReductionError("triple-line normalization failed")
        return "cE"
    if double is not None:
        if double.degree() != 1:
            raise ReductionError("unexpected repeated non-linear cubic factor")
        rows = _complete_to_basis(_linear_coeffs(double))
        _linear_change(red, rows)
        g3 = _cubic_part(red.current)
        if any(e[1] < 2 for e in g3.support()):
            raise ReductionError("double-line normalization failed")
        # Cubic is now c * y^2 * (cofactor); move the cofactor to z.
        cofactor = Polynomial(
            {(0, e[1] - 2, e[2], e[3]): c for e, c in g3.items()}
        )
        rows = _complete_to_basis(_linear_coeffs(cofactor), fixed_first=True)
        _linear_change(red, rows)
        g3 = _cubic_part(red.current)
        if g3.support() != (Y2Z,):
            raise ReductionError("cofactor normalization failed")
        return "cDn"
    return "cD4"


def _finish_cd(red: _Reducer) -> _Outcome:
    _run_elimination(red, _cd_offender, _cd_killer)
    sig, checks, problem = _cd_shape(red.current)
    if problem is None:
        return _Outcome(sig, None)
    raise ReductionError(f"cD shape check failed: {problem}")


def _try_cd4_permutations(red: _Reducer) -> _Outcome:
    base_poly = red.current
    base_changes = list(red.changes)
    base_budget = red.budget
    base_notes = list(red.notes)
    first_error: Optional[str] = None
    for perm in itertools.permutations((1, 2, 3)):
        red.current = base_poly
        red.changes = list(base_changes)
        red.budget = base_budget
        red.notes = list(base_notes)
        try:
            _permute_variables(red, [0, *perm])
            return _finish_cd(red)
        except ReductionError as err:
            if first_error is None:
                first_error = str(err)
    raise ReductionError(
        f"no (y,z,t) arrangement matches the cD_4 shape: {first_error}"
    )


def _finish_ce(red: _Reducer) -> _Outcome:
    # Sweep y^2-divisible monomials first; the route decision below is
    # invariant under these kills.
    def _sweep_kill(r, m):
        members = [e for e in r.current.support() if e[0] == 0 and e[1] >= 2 and e != Y3]
        _kill_with_struct(r, Y3, 1, members)
        return True

    _run_elimination(
        red,
        lambda e, g: e[0] == 0 and e[1] >= 2 and e != Y3,
        _sweep_kill,
    )
    g = red.current
    c4 = _part(g, lambda e: e[0] == 0 and e[1] == 0 and total_degree(e) == 4)
    b3 = _part(g, lambda e: e[0] == 0 and e[1] == 1 and e[2] + e[3] == 3)
    c5 = _part(g, lambda e: e[0] == 0 and e[1] == 0 and total_degree(e) == 5)
    if not c4.is_zero():
        kind, struct, offender, killer = "cE6", Z4, _ce6_offender, _ce6_killer
    elif not b3.is_zero():
        kind, struct, offender, killer = "cE7", YZ3, _ce7_offender, _ce7_killer
    elif not c5.is_zero():
        kind, struct, offender, killer = "cE8", Z5, _ce8_offender, _ce8_killer
    else:
        raise ReductionError(
            "neither quartic (z,t) part, cubic y-linear part, nor quintic "
            "(z,t) part is present: beyond the cE_8 range"
        )
    if red.coefficient(struct) == 0:
        _shear_until(red, struct, preserve=(Y3, YZ3))
    _run_elimination(red, offender, killer)
    sig, checks, problem = _ce_shape(kind, red.current)
    if problem is not None:
        raise ReductionError(f"{kind} shape check failed: {problem}")
    return _Outcome(sig, None)


def _analyze_germ(f: Polynomial, truncation: int) -> Tuple[_Outcome, _Reducer]:
    if f.is_zero():
        raise ValueError("the zero polynomial does not define a hypersurface germ")
    if f.coefficient((0, 0, 0, 0)) != 0:
        raise ValueError("nonzero constant term: the origin is not on the hypersurface")
    linear = _part(f, lambda e: total_degree(e) == 1)
    red = _Reducer(f, truncation)
    if not linear.is_zero():
        return _Outcome(SingularityType("smooth"), None), red
    carriers = _diagonalize_quadratic(red)
    carriers = [i for i in carriers if _quadratic_matrix(red.current)[i][i] != 0]
    if not carriers:
        return _Outcome(SingularityType("other"), None), red
    order = sorted(carriers) + [i for i in range(4) if i not in carriers]
    _permute_variables(red, order)
    rank = len(carriers)
    if rank >= 2:
        for i in range(rank):
            _eliminate_square_variable(red, i)
        residual = _part(
            red.current,
            lambda e: all(e[i] == 0 for i in range(rank)),
        )
        if rank == 4:
            return _Outcome(SingularityType("cA", 1), None), red
        if residual.is_zero():
            red.notes.append(
                "no residual terms after splitting the quadratic part: "
                "non-isolated within the truncation"
            )
            return _Outcome(SingularityType("other"), None), red
        n = residual.min_degree() - 1
        return _Outcome(SingularityType("cA", n), None), red
    # rank 1: the compound D/E zone.
    _eliminate_square_variable(red, 0)
    branch = _route_cubic(red)
    if branch == "cE":
        return _finish_ce(red), red
    if branch == "cDn":
        return _finish_cd(red), red
    return _try_cd4_permutations(red), red


def classify_type(f: Polynomial, truncation_degree: Optional[int] = None) -> SingularityType:
    """cDV type of the germ at the origin defined by f.

    Pattern-matches the reduced equation against the normal-form shapes;
    quadratic rank >= 2 short-circuits to cA.  Returns "smooth" for a
    nonsingular point and "other" when no shape matches within the
    truncation budget.  Raises ValueError when f does not vanish at 0.
    """
    truncation = truncation_degree or default_truncation(f)
    try:
        outcome, _red = _analyze_germ(f, truncation)
    except ReductionError:
        return SingularityType("other")
    return outcome.type


def reduce_to_normal_form(
    f: Polynomial, truncation_degree: Optional[int] = None
) -> NormalFormCertificate:
    """Reduce a cD/cE germ to its normal-form shape.

    Returns the certificate with the reduced polynomial, the replayable list
    of coordinate changes, and the verified b_i-type constraints.  Raises
    ReductionError for inputs outside the cD/cE range (cA inputs only need
    classification) or when the reduction cannot be completed within the
    iteration budget and truncation.
    """
    truncation = truncation_degree or default_truncation(f)
    outcome, red = _analyze_germ(f, truncation)
    kind = outcome.type.kind
    if kind == "smooth":
        raise ReductionError("the point is smooth; nothing to reduce")
    if kind == "cA":
        raise ReductionError(
            "cA-type germ: every low-discrepancy divisor over it is rational, "
            "no cD/cE normal form applies"
        )
    if kind == "other":
        raise ReductionError("no cD/cE normal form matches within the truncation")
    if kind == "cD":
        _sig, checks, problem = _cd_shape(red.current)
    else:
        _sig, checks, problem = _ce_shape(kind, red.current)
    if problem is not None:
        raise ReductionError(problem)
    return NormalFormCertificate(
        type=outcome.type,
        reduced=red.current,
        applied_changes=tuple(red.changes),
        satisfied_constraints=tuple(checks),
        truncation_degree=truncation,
        notes=tuple(red.notes),
    )
