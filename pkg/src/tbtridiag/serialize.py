"""JSON documents for arrays, systems, and triples.

All scalars are encoded as field-element strings and matrices as row-major
arrays of such strings; the field itself travels as a descriptor string.
Key order is fixed so that serialization is byte-stable, and
parse(emit(x)) == x holds structurally for every schema.

Document kinds are recognized by their keys: an array document carries
"theta", a system document carries "A", a triple document carries "C".
"""

import json

from .arrays import EigenvalueArray, Family, FamilyTag, validate_array
from .errors import ParseError
from .fields import parse_field
from .matrices import Matrix
from .system import IntersectionNumbers, TBSystem, _signed_sum, diagonal
from .triple import LeonardTriple, TripleScalars, WData
from .matrices import lagrange_idempotents
from .errors import NotAnnihilated


def _enc_elems(fld, elems):
    return [fld.encode(e) for e in elems]


def _enc_matrix(fld, m):
    return [[fld.encode(e) for e in row] for row in m.rows]


def _dec_matrix(fld, rows):
    try:
        return Matrix(fld, [[fld.parse(s) for s in row] for row in rows])
    except (TypeError, AttributeError) as exc:
        raise ParseError(f"bad matrix entry: {exc}") from None


def emit_array(arr):
    fld = arr.field
    doc = {
        "field": fld.descriptor(),
        "d": arr.d,
        "theta": _enc_elems(fld, arr.theta),
        "theta_star": _enc_elems(fld, arr.theta_star),
    }
    if arr.family is not None:
        tag = {
            "family": arr.family.family.value,
            "h": fld.encode(arr.family.h),
            "h_star": fld.encode(arr.family.h_star),
        }
        if arr.family.q is not None:
            tag["q"] = fld.encode(arr.family.q)
        if arr.family.beta is not None:
            tag["beta"] = fld.encode(arr.family.beta)
        doc["family"] = tag
    return doc


def decode_array(doc):
    try:
        fld = parse_field(doc["field"])
        theta = [fld.parse(s) for s in doc["theta"]]
        theta_star = [fld.parse(s) for s in doc["theta_star"]]
        d = doc["d"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed array document: {exc}") from None
    if d != len(theta) - 1:
        raise ParseError(f"d = {d} but theta has {len(theta)} entries")
    arr = validate_array(fld, theta, theta_star)
    tag_doc = doc.get("family")
    if tag_doc is not None:
        try:
            tag = FamilyTag(
                Family(tag_doc["family"]),
                fld.parse(tag_doc["h"]),
                fld.parse(tag_doc["h_star"]),
                q=fld.parse(tag_doc["q"]) if "q" in tag_doc else None,
                beta=fld.parse(tag_doc["beta"]) if "beta" in tag_doc else None,
            )
        except (KeyError, ValueError) as exc:
            raise ParseError(f"malformed family tag: {exc}") from None
        arr = arr.with_family(tag)
    return arr


def emit_system(sys):
    fld = sys.field
    doc = {"array": emit_array(sys.array)}
    doc["c"] = _enc_elems(fld, sys.inters.c)
    doc["b"] = _enc_elems(fld, sys.inters.b)
    doc["c_star"] = _enc_elems(fld, sys.inters.c_star)
    doc["b_star"] = _enc_elems(fld, sys.inters.b_star)
    doc["A"] = _enc_matrix(fld, sys.A)
    doc["A_star"] = _enc_matrix(fld, sys.A_star)
    doc["K"] = _enc_matrix(fld, sys.K)
    return doc


def decode_system(doc):
    """Load a system document without enforcing construction identities.

    Stored matrices are taken as-is so that verification can report on
    hand-edited documents; idempotents of a non-diagonalizable A are left
    unset rather than raising.
    """
    try:
        arr = decode_array(doc["array"])
        fld = arr.field
        inters = IntersectionNumbers(
            tuple(fld.parse(s) for s in doc["c"]),
            tuple(fld.parse(s) for s in doc["b"]),
            tuple(fld.parse(s) for s in doc["c_star"]),
            tuple(fld.parse(s) for s in doc["b_star"]),
        )
        A = _dec_matrix(fld, doc["A"])
        A_star = _dec_matrix(fld, doc["A_star"])
        K = _dec_matrix(fld, doc["K"])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed system document: {exc}") from None
    n = arr.d + 1
    if A.shape != (n, n) or A_star.shape != (n, n) or K.shape != (n, n):
        raise ParseError("matrix shapes do not match the diameter")
    E_star = tuple(diagonal(fld, [fld.one if j == i else fld.zero for j in range(n)])
                   for i in range(n))
    try:
        E = tuple(lagrange_idempotents(A, arr.theta))
        S = _signed_sum(E)
    except NotAnnihilated:
        E, S = None, None
    S_star = _signed_sum(E_star)
    return TBSystem(arr, inters, A, A_star, E, E_star, K, S, S_star)


def emit_triple(sys, tri, w):
    fld = sys.field
    sc = tri.scalars
    doc = {"system": emit_system(sys)}
    doc["C"] = _enc_matrix(fld, tri.C)
    doc["W"] = _enc_matrix(fld, w.W)
    doc["W_prime"] = _enc_matrix(fld, w.W_prime)
    doc["W_dprime"] = _enc_matrix(fld, w.W_dprime)
    doc["P"] = _enc_matrix(fld, w.P)
    doc["kappa"] = fld.encode(w.kappa)
    doc["z"] = fld.encode(sc.z)
    doc["t"] = _enc_elems(fld, w.t)
    doc["beta"] = fld.encode(sc.beta)
    doc["rho"] = fld.encode(sc.rho)
    doc["h"] = fld.encode(sc.h)
    if sc.q is not None:
        doc["q"] = fld.encode(sc.q)
    return doc


def decode_triple(doc):
    """Load a triple document, returning (system, triple, wdata)."""
    try:
        sys = decode_system(doc["system"])
        fld = sys.field
        C = _dec_matrix(fld, doc["C"])
        W = _dec_matrix(fld, doc["W"])
        W_prime = _dec_matrix(fld, doc["W_prime"])
        W_dprime = _dec_matrix(fld, doc["W_dprime"])
        P = _dec_matrix(fld, doc["P"])
        sc = TripleScalars(
            fld.parse(doc["beta"]), fld.parse(doc["rho"]), fld.parse(doc["h"]),
            fld.parse(doc["z"]), fld.parse(doc["q"]) if "q" in doc else None)
        t = tuple(fld.parse(s) for s in doc["t"])
        kappa = fld.parse(doc["kappa"])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed triple document: {exc}") from None
    if sys.E is None:
        raise ParseError("triple document with a non-diagonalizable A")
    theta = sys.array.theta
    E_prime = tuple(lagrange_idempotents(sys.A_star, theta))
    E_dprime = tuple(lagrange_idempotents(C, theta))
    tri = LeonardTriple(sys.A, sys.A_star, C, sys.E, E_prime, E_dprime, sc)
    return sys, tri, WData(W, W_prime, W_dprime, P, t, kappa)


def dumps(doc):
    """Canonical, byte-stable JSON text."""
    return json.dumps(doc, indent=2) + "\n"


def loads(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ParseError("top-level JSON value must be an object")
    return doc
