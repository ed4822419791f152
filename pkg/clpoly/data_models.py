# clpoly/data_models.py
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import sympy
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    field_serializer,
    field_validator,
    model_validator,
)
from sympy import QQ, Poly

Rational = Fraction

# Generators: z is the polynomial variable, s = z^2 + z, u carries the c_i,
# t parametrizes the critical line, w = t^2.
Z, S, U, T, W = sympy.symbols("z s u t w")

_EXACT = ConfigDict(frozen=True, arbitrary_types_allowed=True, extra="forbid")


def as_rational(v: Any) -> Fraction:
    """Coerce ints, "p/q" / decimal strings and sympy rationals to Fraction."""
    if isinstance(v, Fraction):
        return v
    if isinstance(v, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v.strip())
    if isinstance(v, sympy.Rational):
        return Fraction(int(v.p), int(v.q))
    raise TypeError(f"cannot interpret {v!r} as an exact rational")


def to_sympy(x: Fraction) -> sympy.Rational:
    return sympy.Rational(x.numerator, x.denominator)


def poly_from_coeffs(coeffs: Sequence[Any], gen: sympy.Symbol = Z) -> Poly:
    """Build a Poly over QQ from ascending coefficients."""
    rep = [to_sympy(as_rational(c)) for c in reversed(list(coeffs))]
    return Poly.from_list(rep or [sympy.Integer(0)], gen, domain=QQ)


def coeffs_of(p: Poly) -> List[Fraction]:
    """Ascending coefficients of p; the zero polynomial gives []."""
    if p.is_zero:
        return []
    return [as_rational(c) for c in reversed(p.all_coeffs())]


def with_gen(p: Poly, gen: sympy.Symbol) -> Poly:
    return poly_from_coeffs(coeffs_of(p), gen)


def poly_to_json(p: Poly) -> List[str]:
    return [str(c) for c in coeffs_of(p)]


def _coerce_rational_tuple(v: Any) -> Tuple[Fraction, ...]:
    if v is None:
        return ()
    try:
        return tuple(as_rational(x) for x in v)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise TypeError("expected a sequence of exact rationals") from exc


class Parity(str, Enum):
    EVEN = "even"
    ODD = "odd"

    @property
    def offset(self) -> int:
        return 1 if self is Parity.ODD else 0

    @classmethod
    def of_degree(cls, d: int) -> "Parity":
        return cls.ODD if d % 2 else cls.EVEN


class NotCLReason(str, Enum):
    MIXED_PARITY = "MixedParity"
    COMPLEX_C = "ComplexC"
    C_SMALL = "CSmall"


class Carrier(str, Enum):
    CL = "CL"
    UNIT_CIRCLE = "UnitCircle"


class IsolatingInterval(BaseModel):
    """
    A closed rational interval containing exactly one distinct real root.

    Attributes:
        lo: Lower endpoint (inclusive).
        hi: Upper endpoint (inclusive); lo == hi marks an exact rational root.
        multiplicity: Multiplicity of the isolated root.
    """

    model_config = _EXACT

    lo: Fraction
    hi: Fraction
    multiplicity: int = 1

    @field_validator("lo", "hi", mode="before")
    def _coerce_rational(cls, v: Any) -> Fraction:
        try:
            return as_rational(v)
        except (ValueError, ZeroDivisionError) as exc:
            raise TypeError("lo and hi must be exact rationals") from exc

    @field_validator("multiplicity", mode="before")
    def _coerce_multiplicity(cls, v: Any) -> int:
        if not isinstance(v, int):
            try:
                v = int(v)
            except Exception as exc:
                raise TypeError("multiplicity must be an integer") from exc
        if v < 1:
            raise ValueError("multiplicity must be positive")
        return v

    @model_validator(mode="after")
    def _check_order(self):
        if self.lo > self.hi:
            raise ValueError("IsolatingInterval.lo must not exceed IsolatingInterval.hi")
        return self

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def negated(self) -> "IsolatingInterval":
        return IsolatingInterval(lo=-self.hi, hi=-self.lo, multiplicity=self.multiplicity)

    @field_serializer("lo", "hi")
    def _serialize_rational(self, v: Fraction) -> str:
        return str(v)


class SDecomposition(BaseModel):
    """p(z) = g(z^2+z) + (2z+1)·h(z^2+z), with g and h polynomials in s."""

    model_config = _EXACT

    g: Poly
    h: Poly

    @field_serializer("g", "h")
    def _serialize_poly(self, p: Poly) -> List[str]:
        return poly_to_json(p)


class CLForm(BaseModel):
    """
    Factored form scale·b(z)·Π(z^2+z+c_i) of a CL-polynomial.

    Attributes:
        scale: Nonzero leading scalar a.
        parity: EVEN when b(z) = 1, ODD when b(z) = 2z+1.
        c_poly: Monic polynomial in u whose roots (with multiplicity) are the c_i.
    """

    model_config = _EXACT

    scale: Fraction
    parity: Parity
    c_poly: Poly

    @field_validator("scale", mode="before")
    def _coerce_scale(cls, v: Any) -> Fraction:
        return as_rational(v)

    @model_validator(mode="after")
    def _check_form(self):
        if self.scale == 0:
            raise ValueError("CLForm.scale must be nonzero")
        if self.c_poly.is_zero or self.c_poly.LC() != 1:
            raise ValueError("CLForm.c_poly must be monic")
        return self

    @property
    def m(self) -> int:
        return self.c_poly.degree()

    @property
    def degree(self) -> int:
        return 2 * self.m + self.parity.offset

    @field_serializer("scale")
    def _serialize_scale(self, v: Fraction) -> str:
        return str(v)

    @field_serializer("c_poly")
    def _serialize_c_poly(self, p: Poly) -> List[str]:
        return poly_to_json(p)


class NotCL(BaseModel):
    """Verdict returned by cl_detect when the input is not a CL-polynomial."""

    model_config = _EXACT

    reason: NotCLReason
    detail: str = ""


class RootReport(BaseModel):
    """
    Roots of a CL-polynomial, all on Re(z) = -1/2.

    Attributes:
        parity: Parity of the source form.
        imag_poly: Real polynomial in t whose real roots are exactly the
            imaginary parts of the roots (t^e·c_poly(t^2 + 1/4)).
        roots: Isolating intervals for the imaginary parts, ascending, with
            multiplicities; conjugate pairs appear as mirrored intervals.
    """

    model_config = _EXACT

    parity: Parity
    imag_poly: Poly
    roots: Tuple[IsolatingInterval, ...] = ()

    @property
    def real_part(self) -> Fraction:
        return Fraction(-1, 2)

    @property
    def total_multiplicity(self) -> int:
        return sum(iv.multiplicity for iv in self.roots)

    @field_serializer("imag_poly")
    def _serialize_poly(self, p: Poly) -> List[str]:
        return poly_to_json(p)


class HStarVector(BaseModel):
    """
    The h*-vector h_0*..h_d* of a polynomial of nominal degree d.

    Trailing zeros are significant: the nominal degree fixes the denominator
    (1-t)^(d+1).
    """

    model_config = _EXACT

    degree: int
    h: Tuple[Fraction, ...]

    @field_validator("h", mode="before")
    def _coerce_entries(cls, v: Any) -> Tuple[Fraction, ...]:
        return _coerce_rational_tuple(v)

    @model_validator(mode="after")
    def _check_length(self):
        if self.degree < 0:
            raise ValueError("HStarVector.degree must be non-negative")
        if len(self.h) != self.degree + 1:
            raise ValueError(
                f"HStarVector of degree {self.degree} needs {self.degree + 1} entries, got {len(self.h)}"
            )
        return self

    @field_serializer("h")
    def _serialize_h(self, v: Tuple[Fraction, ...]) -> List[str]:
        return [str(x) for x in v]


class DiamondReport(BaseModel):
    model_config = _EXACT

    is_cl: bool
    palindromic: bool
    nonnegative: bool
    diamond: bool


class PalindromicCoeffs(BaseModel):
    """Coefficients of p in the palindromic basis: p = Σ coeffs_i · p_i^d."""

    model_config = _EXACT

    degree: int
    coeffs: Tuple[Fraction, ...]

    @field_validator("coeffs", mode="before")
    def _coerce_coeffs(cls, v: Any) -> Tuple[Fraction, ...]:
        return _coerce_rational_tuple(v)

    @model_validator(mode="after")
    def _check_length(self):
        if len(self.coeffs) != self.degree // 2 + 1:
            raise ValueError("PalindromicCoeffs needs floor(d/2)+1 coefficients")
        return self

    @field_serializer("coeffs")
    def _serialize_coeffs(self, v: Tuple[Fraction, ...]) -> List[str]:
        return [str(x) for x in v]


class CLRestriction(BaseModel):
    """
    f(-1/2 + t·i) = sign · (i if imaginary else 1) · q(t), with q real and of
    positive leading coefficient.
    """

    model_config = _EXACT

    degree_mod4: int
    imaginary: bool
    sign: int
    q: Poly

    @model_validator(mode="after")
    def _check_sign(self):
        if self.sign not in (1, -1):
            raise ValueError("CLRestriction.sign must be +1 or -1")
        return self

    @field_serializer("q")
    def _serialize_q(self, p: Poly) -> List[str]:
        return poly_to_json(p)


class OrderedRootList(BaseModel):
    """
    Roots along a totally ordered carrier: imaginary-part intervals on CL,
    or principal angles (after the cut) on the unit circle.
    """

    model_config = _EXACT

    carrier: Carrier
    positions: Tuple[Union[IsolatingInterval, float], ...] = ()
    coincident: bool = False

    @property
    def slots(self) -> int:
        return sum(
            p.multiplicity if isinstance(p, IsolatingInterval) else 1
            for p in self.positions
        )


class VietaVector(BaseModel):
    """v_1..v_m, the elementary symmetric values of the c_i (v_0 = 1 implicit)."""

    model_config = _EXACT

    degree: int
    v: Tuple[Fraction, ...]

    @field_validator("v", mode="before")
    def _coerce_v(cls, v: Any) -> Tuple[Fraction, ...]:
        return _coerce_rational_tuple(v)

    @model_validator(mode="after")
    def _check_length(self):
        if len(self.v) != self.degree // 2:
            raise ValueError(
                f"VietaVector of degree {self.degree} needs {self.degree // 2} coordinates"
            )
        return self

    @property
    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.v)

    @field_serializer("v")
    def _serialize_v(self, v: Tuple[Fraction, ...]) -> List[str]:
        return [str(x) for x in v]


class AffineForm(BaseModel):
    """v ↦ ⟨normal, v⟩ + offset with rational entries."""

    model_config = _EXACT

    normal: Tuple[Fraction, ...]
    offset: Fraction

    @field_validator("normal", mode="before")
    def _coerce_normal(cls, v: Any) -> Tuple[Fraction, ...]:
        return _coerce_rational_tuple(v)

    @field_validator("offset", mode="before")
    def _coerce_offset(cls, v: Any) -> Fraction:
        return as_rational(v)

    def evaluate(self, v: Sequence[Fraction]) -> Fraction:
        return sum((n * x for n, x in zip(self.normal, v)), Fraction(0)) + self.offset

    @field_serializer("normal")
    def _serialize_normal(self, v: Tuple[Fraction, ...]) -> List[str]:
        return [str(x) for x in v]

    @field_serializer("offset")
    def _serialize_offset(self, v: Fraction) -> str:
        return str(v)


class AffineIneq(BaseModel):
    """
    Primitive integer inequality ⟨normal, v⟩ + offset ≥ 0.

    Attributes:
        normal: Integer normal vector of length m.
        offset: Integer offset; gcd(normal, offset) = 1.
    """

    model_config = _EXACT

    normal: Tuple[int, ...]
    offset: int

    @model_validator(mode="after")
    def _check_primitive(self):
        g = 0
        for x in (*self.normal, self.offset):
            g = gcd(g, x)
        if g != 1:
            raise ValueError("AffineIneq must be primitive (gcd of entries = 1)")
        return self

    def evaluate(self, v: Sequence[Fraction]) -> Fraction:
        return sum((n * x for n, x in zip(self.normal, v)), Fraction(0)) + self.offset

    def satisfied_by(self, v: Sequence[Fraction]) -> bool:
        return self.evaluate(v) >= 0


class ConeDescription(BaseModel):
    """
    The (♦) region of degree d in Vieta coordinates.

    Attributes:
        degree: The polynomial degree d.
        forms: Affine forms h_0*(v)..h_d*(v).
        inequalities: Primitive rows h_i*(v) ≥ 0 for i = 0..floor(d/2).
        vertices: Simplex vertices, ordered by omitted inequality.
        is_lattice: Whether every vertex is integral.
    """

    model_config = _EXACT

    degree: int
    forms: Tuple[AffineForm, ...]
    inequalities: Tuple[AffineIneq, ...]
    vertices: Tuple[VietaVector, ...]
    is_lattice: bool

    @model_validator(mode="after")
    def _check_counts(self):
        m = self.degree // 2
        if len(self.inequalities) != m + 1 or len(self.vertices) != m + 1:
            raise ValueError("a simplex description needs floor(d/2)+1 facets and vertices")
        return self


class BoundsRow(BaseModel):
    """One row of the extremal-root table: certified decimals plus their intervals."""

    model_config = _EXACT

    degree: int
    alpha_tilde: str
    beta_sr: str
    braun_develin: str
    braun_disc: Fraction
    within_disc: bool
    alpha_tilde_interval: IsolatingInterval
    beta_sr_interval: IsolatingInterval

    @field_serializer("braun_disc")
    def _serialize_disc(self, v: Fraction) -> str:
        return str(v)


class InterlaceRow(BaseModel):
    model_config = _EXACT

    degree: int
    p0_chain: bool
    pencil: bool


class InterlaceSuiteReport(BaseModel):
    model_config = _EXACT

    d_max: int
    rows: Tuple[InterlaceRow, ...]

    @property
    def all_pass(self) -> bool:
        return all(r.p0_chain and r.pencil for r in self.rows)


class ChainReport(BaseModel):
    """
    An ordered chain of extremal roots, smallest first.

    Attributes:
        degree: The polynomial degree d.
        names: Labels such as "a_1", "a_sr", "a_0", in claimed ascending order.
        values: Certified decimal renderings aligned with names ("none" when
            the root does not exist).
        holds: Whether every consecutive pair is strictly increasing.
        expected: Whether the chain is claimed to hold at this degree.
    """

    model_config = _EXACT

    degree: int
    names: Tuple[str, ...]
    values: Tuple[str, ...]
    holds: bool
    expected: bool = True


class Degree10Report(BaseModel):
    model_config = _EXACT

    m: int
    is_cl: bool
    diamond: bool
    max_imaginary: Optional[str] = None
    a_sr: str
    comparison: Optional[int] = None

    @property
    def exceeds_a_sr(self) -> bool:
        return self.comparison == 1


class OmegaWitness(BaseModel):
    """
    A (♦) CL-polynomial p_0^d + c·(2z+1)·p_0^(d-1) vanishing at -1/2 + target·i.
    """

    model_config = _EXACT

    degree: int
    target: Fraction
    c: Fraction
    poly: Poly
    is_cl: bool
    diamond: bool
    vanishes: bool

    @property
    def ok(self) -> bool:
        return self.c > 0 and self.is_cl and self.diamond and self.vanishes

    @field_serializer("target", "c")
    def _serialize_rational(self, v: Fraction) -> str:
        return str(v)

    @field_serializer("poly")
    def _serialize_poly(self, p: Poly) -> List[str]:
        return poly_to_json(p)


class OmegaSweepReport(BaseModel):
    """Witnesses for evenly spaced targets inside (ã_{d-1}, ã_d)."""

    model_config = _EXACT

    degree: int
    lower: str
    upper: str
    witnesses: Tuple[OmegaWitness, ...] = ()
    failures: Tuple[str, ...] = ()

    @property
    def all_pass(self) -> bool:
        return not self.failures and all(w.ok for w in self.witnesses)


class VertexIdentityReport(BaseModel):
    """mapping[k] is the palindromic index i with vertex k ↔ p_i^d, or None."""

    model_config = _EXACT

    degree: int
    mapping: Tuple[Optional[int], ...]

    @property
    def bijective(self) -> bool:
        return None not in self.mapping and sorted(self.mapping) == list(  # type: ignore[type-var]
            range(len(self.mapping))
        )


class AppendixComparison(BaseModel):
    model_config = _EXACT

    degree: int
    inequalities_match: bool
    vertices_match: bool
    lattice: bool
    missing_inequalities: Tuple[Tuple[int, ...], ...] = ()
    unexpected_inequalities: Tuple[Tuple[int, ...], ...] = ()
    missing_vertices: Tuple[Tuple[int, ...], ...] = ()
    unexpected_vertices: Tuple[Tuple[str, ...], ...] = ()

    @property
    def full_match(self) -> bool:
        return self.inequalities_match and self.vertices_match


class Report(BaseModel):
    """
    The CLI output envelope.

    Attributes:
        command: Subcommand name.
        inputs: Echo of the parsed arguments.
        results: Structured results (JSON-ready values only).
        precision: Display digits used for decimals.
        version: Package version.
        timing: Wall-clock seconds; omitted under --deterministic.
    """

    model_config = ConfigDict(extra="forbid")

    command: str
    inputs: Dict[str, Any] = Field(default_factory=dict)
    results: Dict[str, Any] = Field(default_factory=dict)
    precision: int
    version: str
    timing: Optional[float] = None

    @field_validator("command", mode="before")
    def _coerce_command(cls, v: Any) -> str:
        if not isinstance(v, str):
            v = str(v)
        return v.strip()

    @model_validator(mode="after")
    def _validate_required(self):
        if not self.command:
            raise ValueError("command must be a non-empty string")
        if self.precision < 0:
            raise ValueError("precision must be non-negative")
        return self
