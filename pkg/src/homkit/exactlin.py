"""Exact scalars and dense linear algebra over Q and GF(p).

Arrays are numpy object arrays whose entries are ``gmpy2.mpq`` (rationals)
or :class:`Residue` (prime field).  Every routine here is pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import gmpy2
import numpy as np

MPQ = type(gmpy2.mpq(0))


class FieldMismatch(ValueError):
    pass


class ShapeMismatch(ValueError):
    pass


class NoSolution(ArithmeticError):
    pass


class Singular(ArithmeticError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Residue:
    """An element of GF(p), stored as its canonical residue in [0, p)."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.p = p
        self.v = v % p

    def _coerce(self, other) -> int | None:
        if isinstance(other, Residue):
            if other.p != self.p:
                raise FieldMismatch(f"GF({self.p}) vs GF({other.p})")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, (Fraction, MPQ)):
            return int(other.numerator) * pow(int(other.denominator), -1, self.p)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Residue(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Residue(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Residue(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Residue(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.v, self.p)

    def __pos__(self):
        return self

    def inverse(self) -> Residue:
        if self.v == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return Residue(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * Residue(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Residue(o, self.p) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return Residue(pow(self.v, n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.p == other.p and self.v == other.v
        if isinstance(other, (int, Fraction, MPQ)):
            return self.v == self._coerce(other) % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"{self.v} (mod {self.p})"

    def __str__(self):
        return str(self.v)


@dataclass(frozen=True)
class Field:
    """Q (``kind='Q'``) or GF(p) (``kind='GF'``)."""

    kind: str = "Q"
    p: int | None = None

    def __post_init__(self):
        if self.kind == "Q":
            if self.p is not None:
                raise ValueError("the rationals take no modulus")
        elif self.kind == "GF":
            if self.p is None or not is_prime(self.p) or self.p > 2**31:
                raise ValueError(f"GF(p) needs a prime p <= 2^31, got {self.p}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> Field:
        """Accepts ``Q``, ``QQ``, ``gf:5`` or ``GF(5)``."""
        t = text.strip().lower()
        if t in ("q", "qq", "rationals"):
            return cls("Q")
        for prefix in ("gf:", "gf(", "gf"):
            if t.startswith(prefix):
                return cls("GF", int(t[len(prefix):].rstrip(")")))
        raise ValueError(f"cannot parse field {text!r}")

    def __str__(self):
        return "Q" if self.kind == "Q" else f"gf:{self.p}"

    @property
    def is_finite(self) -> bool:
        return self.kind == "GF"

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, x):
        if self.kind == "Q":
            if isinstance(x, Residue):
                raise FieldMismatch("GF(p) scalar given to Q")
            if isinstance(x, Fraction):
                return gmpy2.mpq(x.numerator, x.denominator)
            return gmpy2.mpq(x)
        if isinstance(x, Residue):
            if x.p != self.p:
                raise FieldMismatch(f"GF({x.p}) scalar given to GF({self.p})")
            return x
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, (Fraction, MPQ)):
            num, den = int(x.numerator), int(x.denominator)
            if den % self.p == 0:
                raise ZeroDivisionError(f"{x} is undefined in GF({self.p})")
            return Residue(num * pow(den, -1, self.p), self.p)
        return Residue(int(x), self.p)

    def elements(self) -> list:
        if not self.is_finite:
            raise ValueError("Q is infinite")
        return [Residue(v, self.p) for v in range(self.p)]

    def array(self, data) -> np.ndarray:
        arr = np.array(data, dtype=object)
        out = np.empty(arr.shape, dtype=object)
        for idx, x in np.ndenumerate(arr):
            out[idx] = self(x)
        return out

    def zeros(self, shape) -> np.ndarray:
        out = np.empty(shape, dtype=object)
        out.fill(self.zero)
        return out

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.one
        return out

    def basis(self, n: int, i: int) -> np.ndarray:
        v = self.zeros(n)
        v[i] = self.one
        return v

    def canon(self, arr) -> np.ndarray:
        """Re-express entries in canonical form (turns stray ints into field scalars)."""
        return self.array(arr)

    def format(self, x) -> str:
        x = self(x)
        return str(x.v) if isinstance(x, Residue) else str(x)


QQ = Field("Q")


def field_of(*arrays) -> Field:
    """Infer the field from the scalar types present; default Q."""
    found: Field | None = None
    for a in arrays:
        for x in np.asarray(a, dtype=object).flat:
            f = Field("GF", x.p) if isinstance(x, Residue) else None
            if f is None:
                continue
            if found is not None and found != f:
                raise FieldMismatch(f"{found} vs {f}")
            found = f
    return found or QQ


def is_zero(arr) -> bool:
    return all(x == 0 for x in np.asarray(arr, dtype=object).flat)


def nonzero_indices(arr) -> list[tuple[int, ...]]:
    arr = np.asarray(arr, dtype=object)
    return [idx for idx, x in np.ndenumerate(arr) if x != 0]


_residue_value = np.frompyfunc(lambda r: r.v if isinstance(r, Residue) else r, 1, 1)


def _modulus(operands) -> int | None:
    p = None
    for op in operands:
        for x in op.flat:
            if isinstance(x, Residue):
                if p is not None and x.p != p:
                    raise FieldMismatch(f"GF({p}) vs GF({x.p})")
                p = x.p
            break
    return p


_PATH_MEMORY = 1 << 22


def contract(subscripts: str, *operands) -> np.ndarray:
    """Exact Einstein contraction of object arrays.

    Over GF(p) the residues are unwrapped to Python integers, contracted, and
    reduced once at the end.
    """
    for op in operands:
        if not isinstance(op, np.ndarray):
            raise ShapeMismatch("operands must be arrays")
    p = _modulus(operands)
    if p is not None:
        operands = tuple(_residue_value(op).astype(object) if op.size else op for op in operands)
    try:
        if len(operands) <= 2:
            out = np.einsum(subscripts, *operands)
        else:
            # numpy's default memory cap forces huge naive loops on long chains
            path, _ = np.einsum_path(subscripts, *operands, optimize=("greedy", _PATH_MEMORY))
            out = np.einsum(subscripts, *operands, optimize=path)
    except ValueError as exc:
        raise ShapeMismatch(str(exc)) from exc
    if p is None:
        return out
    if not isinstance(out, np.ndarray):
        return Residue(int(out), p)
    wrap = np.frompyfunc(lambda v: Residue(int(v), p), 1, 1)
    return wrap(out).astype(object)


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[-1] != b.shape[0]:
        raise ShapeMismatch(f"{a.shape} @ {b.shape}")
    return np.dot(a, b)


def rref(a: np.ndarray, field: Field | None = None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; the pivot is the first nonzero entry in each column."""
    field = field or field_of(a)
    m = field.canon(a).copy()
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if m[i, c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        inv = field.one / m[r, c]
        m[r] = m[r] * inv
        for i in range(rows):
            if i != r and m[i, c] != 0:
                m[i] = m[i] - m[i, c] * m[r]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: np.ndarray) -> int:
    return len(rref(a)[1])


class Solution(NamedTuple):
    solution: np.ndarray
    kernel_basis: list[np.ndarray]


def kernel(a: np.ndarray, field: Field | None = None) -> list[np.ndarray]:
    field = field or field_of(a)
    r, pivots = rref(a, field)
    n = a.shape[1]
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = field.zeros(n)
        v[f] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = -r[i, f]
        basis.append(v)
    return basis


def solve_linear(a: np.ndarray, b: np.ndarray, field: Field | None = None) -> Solution:
    """Solve ``a @ x = b``; ``b`` may be a vector or an m x k matrix.

    Free variables of the particular solution are set to zero.  Raises
    :class:`NoSolution` for an inconsistent system.
    """
    field = field or field_of(a, b)
    if field_of(a, b) != field and field.is_finite:
        raise FieldMismatch("coefficient and right-hand side fields differ")
    vec = b.ndim == 1
    bb = b.reshape(-1, 1) if vec else b
    m, n = a.shape
    if bb.shape[0] != m:
        raise ShapeMismatch(f"A is {a.shape}, b is {b.shape}")
    k = bb.shape[1]
    aug = np.concatenate([field.canon(a), field.canon(bb)], axis=1)
    r, pivots = rref(aug, field)
    if any(p >= n for p in pivots):
        raise NoSolution("inconsistent linear system")
    x = field.zeros((n, k))
    for i, pc in enumerate(pivots):
        x[pc] = r[i, n:]
    return Solution(x[:, 0] if vec else x, kernel(field.canon(a), field))


def matrix_inverse(a: np.ndarray, field: Field | None = None) -> np.ndarray:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeMismatch(f"not square: {a.shape}")
    field = field or field_of(a)
    n = a.shape[0]
    aug = np.concatenate([field.canon(a), field.eye(n)], axis=1)
    r, pivots = rref(aug, field)
    if pivots[:n] != list(range(n)):
        raise Singular("matrix is rank deficient")
    return r[:, n:]


def matrix_power(a: np.ndarray, n: int, inverse: np.ndarray | None = None) -> np.ndarray:
    field = field_of(a)
    if n < 0:
        a = inverse if inverse is not None else matrix_inverse(a, field)
        n = -n
    out = field.eye(a.shape[0])
    for _ in range(n):
        out = matmul(a, out)
    return out


def kron(*mats: np.ndarray) -> np.ndarray:
    out = mats[0]
    for m in mats[1:]:
        out = np.kron(out, m)
    return out

