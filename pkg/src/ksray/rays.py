"""Rays, ray sets, and the named catalogs (cube, Peres, interlocking cubes, pentagon).

A ray is a unit vector taken modulo global phase.  Canonical form: the first
component whose modulus exceeds 1e-12 is real and strictly positive.  All
catalog entries are built from closed-form expressions, so orthogonality and
duplicate decisions sit many orders of magnitude away from the tolerances.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources

import numpy as np

NORM_TOL = 1e-12
DUP_TOL = 1e-9  # |<u,v>| > 1 - DUP_TOL means u and v are the same ray

REAL = "real"
COMPLEX = "complex"


class ZeroVector(ValueError):
    """Vector too short to normalize (norm <= 1e-12)."""


class FieldMismatch(ValueError):
    """Real field requested but a component has a nonzero imaginary part."""


class ParseError(ValueError):
    """Ray-set file does not match the exchange format."""


class InvariantViolation(ValueError):
    """A ray-set invariant failed; carries the offending ray index."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


@dataclass(frozen=True)
class Ray:
    """Unit vector modulo global phase, with canonical phase fixed."""

    dimension: int
    field: str
    components: np.ndarray

    def inner(self, other: "Ray") -> complex:
        return complex(np.vdot(self.components, other.components))

    def is_orthogonal(self, other: "Ray", tol: float = 1e-9) -> bool:
        return abs(self.inner(other)) < tol

    def same_ray(self, other: "Ray", tol: float = DUP_TOL) -> bool:
        return abs(self.inner(other)) > 1.0 - tol

    def projector(self) -> np.ndarray:
        v = self.components
        return np.outer(v, v.conj())


def canonicalize(components, field: str = REAL) -> Ray:
    """Normalize and phase-fix a raw component list into a Ray.

    Idempotent: feeding the output back in reproduces it to 1e-15
    componentwise.  Raises ZeroVector when the norm is at most 1e-12 and
    FieldMismatch when field is "real" but an imaginary part is nonzero.
    """
    if field not in (REAL, COMPLEX):
        raise ValueError(f"unknown field {field!r}")
    v = np.asarray(components, dtype=np.complex128).reshape(-1).copy()
    if v.size < 2:
        raise ValueError("a ray needs at least 2 components")
    if field == REAL and np.any(v.imag != 0.0):
        raise FieldMismatch("real field with nonzero imaginary part")
    norm = float(np.linalg.norm(v))
    if norm <= NORM_TOL:
        raise ZeroVector(f"norm {norm:g} <= {NORM_TOL:g}")
    v /= norm
    for k in range(v.size):
        a = abs(v[k])
        if a > NORM_TOL:
            v *= v[k].conjugate() / a
            v[k] = a  # kill the residual imaginary part exactly
            break
    if field == REAL:
        v = v.real.astype(np.complex128)
    v.setflags(write=False)
    return Ray(dimension=v.size, field=field, components=v)


@dataclass(frozen=True)
class RaySet:
    """Ordered, labeled, deduplicated rays sharing a dimension and field."""

    dimension: int
    field: str
    rays: tuple[Ray, ...]
    labels: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.rays)

    @property
    def matrix(self) -> np.ndarray:
        """Rays stacked as rows, shape (n, dimension)."""
        return np.array([r.components for r in self.rays])


def build_rayset(vectors, field: str, labels=None) -> RaySet:
    """Canonicalize raw vectors and enforce the ray-set invariants.

    Raises InvariantViolation (with the offending index) on a zero vector,
    a dimension mismatch, a field mismatch, or a duplicate ray.
    """
    rays: list[Ray] = []
    for k, raw in enumerate(vectors):
        try:
            ray = canonicalize(raw, field)
        except ZeroVector as exc:
            raise InvariantViolation(f"ray {k}: {exc}", index=k) from exc
        except FieldMismatch as exc:
            raise InvariantViolation(f"ray {k}: {exc}", index=k) from exc
        rays.append(ray)
    dim = rays[0].dimension
    for k, ray in enumerate(rays):
        if ray.dimension != dim:
            raise InvariantViolation(
                f"ray {k}: dimension {ray.dimension} != {dim}", index=k)
    M = np.array([r.components for r in rays])
    overlaps = np.abs(M.conj() @ M.T)
    for k in range(len(rays)):
        for j in range(k):
            if overlaps[j, k] > 1.0 - DUP_TOL:
                raise InvariantViolation(
                    f"ray {k} duplicates ray {j} (|overlap| = {overlaps[j, k]:.12f})",
                    index=k)
    if labels is None:
        labels = tuple(f"v{k}" for k in range(len(rays)))
    else:
        labels = tuple(str(s) for s in labels)
        if len(labels) != len(rays):
            raise InvariantViolation("labels length differs from ray count")
    return RaySet(dimension=dim, field=field, rays=tuple(rays), labels=labels)


def _pattern_label(vec) -> str:
    return ",".join(str(int(round(c))) for c in vec)


# ---------------------------------------------------------------------------
# catalogs


def cube13() -> RaySet:
    """The 13 rays of a cube in R^3: 3 face, 6 edge, 4 corner diagonals."""
    vecs = [
        (1, 0, 0), (0, 1, 0), (0, 0, 1),
        (0, 1, 1), (0, 1, -1), (1, 0, 1), (1, 0, -1), (1, 1, 0), (1, -1, 0),
        (1, 1, 1), (1, 1, -1), (1, -1, 1), (1, -1, -1),
    ]
    return build_rayset(vecs, REAL, [_pattern_label(v) for v in vecs])


def peres24() -> RaySet:
    """The 24-ray set in R^4: 4 basis rays, 12 two-entry rays, 8 half-integer rays."""
    vecs: list[tuple[int, ...]] = []
    for i in range(4):
        v = [0, 0, 0, 0]
        v[i] = 1
        vecs.append(tuple(v))
    for i in range(4):
        for j in range(i + 1, 4):
            for s in (1, -1):
                v = [0, 0, 0, 0]
                v[i] = 1
                v[j] = s
                vecs.append(tuple(v))
    for s1 in (1, -1):
        for s2 in (1, -1):
            for s3 in (1, -1):
                vecs.append((1, s1, s2, s3))
    return build_rayset(vecs, REAL, [_pattern_label(v) for v in vecs])


# Change of basis sending (0,1,1)/sqrt2 -> e1, (0,1,-1)/sqrt2 -> e2,
# (1,0,0) -> e3.  These are the three rays common to all three cubes;
# the intercube maps below are written in this frame.
_SQ2 = math.sqrt(2.0)
_COMMON_FRAME = np.array([
    [0.0, 1.0 / _SQ2, 1.0 / _SQ2],
    [0.0, 1.0 / _SQ2, -1.0 / _SQ2],
    [1.0, 0.0, 0.0],
])


def _rot_to_second(phi: float) -> np.ndarray:
    return np.array([
        [np.exp(1j * phi), 0, 0],
        [0, 0, -1],
        [0, 1, 0],
    ], dtype=np.complex128)


def _rot_to_third(phi: float) -> np.ndarray:
    return np.array([
        [0, 0, -1],
        [0, np.exp(-1j * phi), 0],
        [1, 0, 0],
    ], dtype=np.complex128)


def three_cubes(phi: float = 0.0) -> RaySet:
    """Union of three interlocking cubes, 33 rays, with a free phase.

    Cube I is cube13 rotated so the three rays shared by all cubes become
    the standard basis.  Cubes II and III are its images under ninety degree
    rotations about two of those shared rays; the phase phi multiplies one
    matrix entry of each rotation and never changes any orthogonality.
    Labels record every (cube, source ray) pair that lands on a given ray,
    joined by "|"; deduplication keeps first occurrences in construction
    order (cube I, then II, then III, each in cube13 order).
    """
    phi = float(phi) % (2.0 * math.pi)
    base = cube13()
    cube_one = [(_COMMON_FRAME @ r.components).astype(np.complex128)
                for r in base.rays]
    r2 = _rot_to_second(phi)
    r3 = _rot_to_third(phi)
    stages = [("I", cube_one),
              ("II", [r2 @ v for v in cube_one]),
              ("III", [r3 @ v for v in cube_one])]
    field = REAL if phi == 0.0 else COMPLEX
    kept: list[np.ndarray] = []
    labels: list[str] = []
    for tag, vectors in stages:
        for src_label, vec in zip(base.labels, vectors):
            ray = canonicalize(vec, COMPLEX)
            for k, u in enumerate(kept):
                if abs(np.vdot(u, ray.components)) > 1.0 - DUP_TOL:
                    labels[k] += f"|{tag}:{src_label}"
                    break
            else:
                kept.append(np.asarray(ray.components))
                labels.append(f"{tag}:{src_label}")
    if field == REAL:
        kept = [v.real for v in kept]
    return build_rayset(kept, field, labels)


def cube_members(label: str) -> frozenset[str]:
    """Cube tags ("I", "II", "III") recorded in a three_cubes label."""
    return frozenset(part.split(":", 1)[0] for part in label.split("|"))


def kcbs5() -> RaySet:
    """Five rays in R^3 whose orthogonality graph is the pentagon.

    v_k = (sin t cos(4 pi k/5), sin t sin(4 pi k/5), cos t) with
    cos^2 t = cos(pi/5)/(1 + cos(pi/5)); consecutive rays are orthogonal.
    """
    c = math.cos(math.pi / 5.0)
    cos_t = math.sqrt(c / (1.0 + c))
    sin_t = math.sqrt(1.0 - c / (1.0 + c))
    vecs = []
    for k in range(5):
        a = 4.0 * math.pi * k / 5.0
        vecs.append((sin_t * math.cos(a), sin_t * math.sin(a), cos_t))
    return build_rayset(vecs, REAL, [f"v{k}" for k in range(5)])


# ---------------------------------------------------------------------------
# file exchange

_FIELDS = {REAL, COMPLEX}


def _rayset_to_obj(rs: RaySet) -> dict:
    return {
        "dimension": rs.dimension,
        "field": rs.field,
        "rays": [[[float(c.real), float(c.imag)] for c in r.components]
                 for r in rs.rays],
        "labels": list(rs.labels),
    }


def save_rayset(rs: RaySet, fp) -> None:
    """Write a ray set to a text file object, rays canonicalized."""
    json.dump(_rayset_to_obj(rs), fp, indent=1)
    fp.write("\n")


def rayset_to_json(rs: RaySet) -> str:
    return json.dumps(_rayset_to_obj(rs), indent=1) + "\n"


def load_rayset(source) -> RaySet:
    """Read a ray set from a path, file object, or JSON string.

    The reader canonicalizes every ray and enforces the ray-set invariants;
    structural problems raise ParseError, per-ray problems raise
    InvariantViolation with the offending index.
    """
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = str(source)
        if "{" not in text:
            with open(text, "r", encoding="utf-8") as fh:
                text = fh.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ParseError("top level must be an object")
    for key in ("dimension", "field", "rays"):
        if key not in obj:
            raise ParseError(f"missing field {key!r}")
    dim = obj["dimension"]
    field = obj["field"]
    if not isinstance(dim, int) or dim < 2:
        raise ParseError(f"dimension must be an integer >= 2, got {dim!r}")
    if field not in _FIELDS:
        raise ParseError(f'field must be "real" or "complex", got {field!r}')
    raw = obj["rays"]
    if not isinstance(raw, list) or not raw:
        raise ParseError("rays must be a nonempty array")
    vectors = []
    for k, entry in enumerate(raw):
        try:
            vec = [complex(re, im) for re, im in entry]
        except (TypeError, ValueError) as exc:
            raise ParseError(f"ray {k}: entries must be [re, im] pairs") from exc
        if len(vec) != dim:
            raise InvariantViolation(
                f"ray {k}: length {len(vec)} != dimension {dim}", index=k)
        vectors.append(vec)
    labels = obj.get("labels")
    if labels is not None and (not isinstance(labels, list)
                               or len(labels) != len(vectors)):
        raise ParseError("labels must match the number of rays")
    return build_rayset(vectors, field, labels)


def ceg18(path=None) -> RaySet:
    """The 18-ray set in R^4 shipped as a transcribed data file.

    Its orthogonality graph has exactly 9 complete bases with every ray in
    exactly 2 of them, which is what the parity certificate needs.
    """
    if path is not None:
        return load_rayset(path)
    text = resources.files("ksray.data").joinpath("ceg18.json").read_text("utf-8")
    return load_rayset(text)
