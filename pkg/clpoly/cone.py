# clpoly/cone.py
"""
The (♦) region in Vieta coordinates.

A monic CL-polynomial of degree d is b(z)·Σ_l v_l s^(m-l) with v_0 = 1 and
m = floor(d/2), so each h_i* is an affine function of v = (v_1..v_m). The
rows h_i*(v) >= 0 for i <= m cut out a simplex.
"""

import hashlib
import json
import logging
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import gcd, lcm
from typing import Any, Dict, List, Sequence, Tuple, Union

from sympy import Matrix, Poly

from .data_models import (
    AffineForm,
    AffineIneq,
    AppendixComparison,
    ConeDescription,
    Parity,
    VertexIdentityReport,
    VietaVector,
    as_rational,
    coeffs_of,
    to_sympy,
)
from .errors import (
    InvariantViolation,
    MissingReferenceError,
    OutOfRangeError,
    ReferenceDataError,
    SingularSubsystemError,
)
from .hstar import hstar_from_poly
from .palindromic_basis import pal_basis
from .poly_core import B_ODD, S_POLY
from .services import DEFAULT_MAX_WORKERS, run_per_degree

logger = logging.getLogger(__name__)

APPENDIX_DEGREES = range(4, 15)


def vieta(cs: Sequence[Any], parity: Union[Parity, str] = Parity.EVEN) -> VietaVector:
    """Elementary symmetric values e_1..e_m of the c_i."""
    e: List[Fraction] = [Fraction(1)]
    for c in cs:
        c = as_rational(c)
        e = [a + c * b for a, b in zip(e + [Fraction(0)], [Fraction(0)] + e)]
    return VietaVector(degree=2 * len(cs) + Parity(parity).offset, v=e[1:])


def vieta_from_c_poly(c_poly: Poly, parity: Union[Parity, str] = Parity.EVEN) -> VietaVector:
    """v_l = (-1)^l times the coefficient of u^(m-l) in the monic c_poly."""
    desc = list(reversed(coeffs_of(c_poly)))
    v = [c if l % 2 == 0 else -c for l, c in enumerate(desc)][1:]
    return VietaVector(degree=2 * len(v) + Parity(parity).offset, v=v)


def _vieta_basis(d: int) -> List[Poly]:
    # B_l = s^(m-l)·b(z); the polynomial of v is B_0 + Σ v_l B_l.
    m = d // 2
    out = []
    for l in range(m + 1):
        p = S_POLY ** (m - l)
        if d % 2:
            p = p * B_ODD
        out.append(p)
    return out


@lru_cache(maxsize=64)
def hstar_linear_forms(d: int) -> Tuple[AffineForm, ...]:
    """h_0*(v)..h_d*(v) as affine forms in v_1..v_m."""
    if d < 1:
        raise OutOfRangeError("hstar_linear_forms needs d >= 1")
    vectors = [hstar_from_poly(b, degree=d).h for b in _vieta_basis(d)]
    return tuple(
        AffineForm(normal=[vec[i] for vec in vectors[1:]], offset=vectors[0][i])
        for i in range(d + 1)
    )


def primitive(normal: Sequence[Fraction], offset: Fraction) -> AffineIneq:
    """Scale ⟨normal, v⟩ + offset >= 0 by a positive rational to coprime integers."""
    entries = [as_rational(x) for x in (*normal, offset)]
    den = lcm(*(x.denominator for x in entries))
    ints = [int(x * den) for x in entries]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("the zero form has no primitive normalization")
    ints = [x // g for x in ints]
    return AffineIneq(normal=tuple(ints[:-1]), offset=ints[-1])


def generate_inequalities(d: int) -> Tuple[AffineIneq, ...]:
    """Primitive rows h_i*(v) >= 0 for i = 0..floor(d/2), in index order."""
    if d < 2:
        raise OutOfRangeError("generate_inequalities needs d >= 2")
    forms = hstar_linear_forms(d)
    return tuple(primitive(f.normal, f.offset) for f in forms[: d // 2 + 1])


def prop42_closed_forms(d: int) -> Tuple[AffineIneq, AffineIneq]:
    """
    (i) v_m >= 0 and (ii) -d·v_m + Σ_{l<m} 2^(m-l) v_l >= 0 for even d,
    -(d-2)·v_m + Σ_{l<m} 3·2^(m-l) v_l >= 0 for odd d (v_0 = 1).
    """
    if d < 2:
        raise OutOfRangeError("prop42_closed_forms needs d >= 2")
    m = d // 2
    first = AffineIneq(normal=tuple([0] * (m - 1) + [1]), offset=0)
    factor = 3 if d % 2 else 1
    top = -(d - 2) if d % 2 else -d
    normal = [factor * 2 ** (m - l) for l in range(1, m)] + [top]
    return first, primitive([Fraction(x) for x in normal], Fraction(factor * 2**m))


def in_region(v: Union[VietaVector, Sequence[Fraction]], inequalities: Sequence[AffineIneq]) -> bool:
    coords = v.v if isinstance(v, VietaVector) else tuple(as_rational(x) for x in v)
    return all(ineq.satisfied_by(coords) for ineq in inequalities)


def enumerate_vertices(d: int) -> Tuple[VietaVector, ...]:
    """
    Vertex k solves the m equalities obtained by dropping row k; it must
    satisfy row k. Ordered by k.
    """
    ineqs = generate_inequalities(d)
    vertices: List[VietaVector] = []
    for k, omitted in enumerate(ineqs):
        rows = [ineq for j, ineq in enumerate(ineqs) if j != k]
        a = Matrix([list(r.normal) for r in rows])
        b = Matrix([-r.offset for r in rows])
        if a.det(method="bareiss") == 0:
            raise SingularSubsystemError(f"degree {d}: facets other than {k} do not meet in a point")
        solution = [as_rational(x) for x in a.LUsolve(b)]
        if omitted.evaluate(solution) < 0:
            raise InvariantViolation(f"degree {d}: vertex {k} violates the omitted inequality")
        vertices.append(VietaVector(degree=d, v=solution))
    logger.debug("Degree %d: %d vertices.", d, len(vertices))
    return tuple(vertices)


def lattice_check(vertices: Sequence[VietaVector]) -> bool:
    return all(v.is_integral for v in vertices)


def cone_description(d: int) -> ConeDescription:
    vertices = enumerate_vertices(d)
    return ConeDescription(
        degree=d,
        forms=hstar_linear_forms(d),
        inequalities=generate_inequalities(d),
        vertices=vertices,
        is_lattice=lattice_check(vertices),
    )


def vertex_polynomial(v: VietaVector) -> Poly:
    """b(z)·(s^m + v_1 s^(m-1) + ... + v_m) for the vertex coordinates v."""
    basis = _vieta_basis(v.degree)
    p = basis[0]
    for vl, bl in zip(v.v, basis[1:]):
        p = p + bl.mul_ground(to_sympy(vl))
    return p


def vertex_identity_check(d: int) -> VertexIdentityReport:
    """Match each vertex polynomial to a palindromic basis element up to scaling."""
    targets = [pal_basis(i, d).monic() for i in range(d // 2 + 1)]
    mapping: List[Any] = []
    for v in enumerate_vertices(d):
        monic = vertex_polynomial(v).monic()
        hits = [i for i, t in enumerate(targets) if t == monic]
        mapping.append(hits[0] if len(hits) == 1 else None)
    return VertexIdentityReport(degree=d, mapping=tuple(mapping))


def sufficient_condition_check(cs: Sequence[Any], d: int) -> bool:
    """Sorted c_i <= 2i+2 (odd d) or 2i+1 (even d), i counted from 0."""
    cs = sorted(as_rational(c) for c in cs)
    if d != 2 * len(cs) + d % 2:
        raise ValueError(f"{len(cs)} c values do not fit degree {d}")
    slack = 2 if d % 2 else 1
    return all(c <= 2 * i + slack for i, c in enumerate(cs))


@lru_cache(maxsize=1)
def load_appendix() -> Dict[str, Any]:
    """Bundled reference simplices, verified against their checksum."""
    data_dir = resources.files("clpoly") / "data"
    raw = (data_dir / "appendix_a.json").read_bytes()
    expected = (data_dir / "appendix_a.sha256").read_text(encoding="utf-8").split()[0]
    actual = hashlib.sha256(raw).hexdigest()
    if actual != expected:
        raise ReferenceDataError(
            f"appendix_a.json checksum mismatch (expected {expected}, got {actual})"
        )
    return json.loads(raw.decode("utf-8"))


def appendix_compare(d: int) -> AppendixComparison:
    """Generated description vs. the bundled reference, modulo scaling and order."""
    if d not in APPENDIX_DEGREES:
        raise MissingReferenceError(f"no reference data for degree {d} (available: 4..14)")
    ref = load_appendix()["degrees"][str(d)]
    ref_ineqs = {
        (*p.normal, p.offset)
        for p in (
            primitive([Fraction(x) for x in row["normal"]], Fraction(row["offset"]))
            for row in ref["inequalities"]
        )
    }
    gen_ineqs = {(*p.normal, p.offset) for p in generate_inequalities(d)}
    ref_vertices = {tuple(int(x) for x in row) for row in ref["vertices"]}
    vertices = enumerate_vertices(d)
    gen_vertices = {
        tuple(int(x) if x.denominator == 1 else x for x in v.v) for v in vertices
    }
    return AppendixComparison(
        degree=d,
        inequalities_match=ref_ineqs == gen_ineqs,
        vertices_match=ref_vertices == gen_vertices,
        lattice=lattice_check(vertices),
        missing_inequalities=tuple(sorted(ref_ineqs - gen_ineqs)),
        unexpected_inequalities=tuple(sorted(gen_ineqs - ref_ineqs)),
        missing_vertices=tuple(sorted(ref_vertices - gen_vertices)),
        unexpected_vertices=tuple(
            sorted(tuple(str(x) for x in v) for v in gen_vertices - ref_vertices)
        ),
    )


def appendix_compare_all(max_workers: int = DEFAULT_MAX_WORKERS) -> List[AppendixComparison]:
    results, _ = run_per_degree(
        appendix_compare, APPENDIX_DEGREES, max_workers, error_mode="raise"
    )
    return [results[d] for d in sorted(results)]
