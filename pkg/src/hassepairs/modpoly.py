"""Classical modular polynomials Phi_l(X, Y) read from text tables.

File format (one file ``phi_<l>.txt`` per degree): lines ``i j c`` with
0 <= j <= i <= l + 1 and ``c`` a signed decimal; the entry for (i, j) also
stands for (j, i); blank lines and lines starting with ``#`` are ignored.
Coefficients stay strings until a field asks for them.
"""

from __future__ import annotations

import os
import re
from functools import lru_cache
from math import comb
from pathlib import Path

import numpy as np

from .errors import MalformedLine, MissingFile, NonMonic, UnknownDegree
from .field import FieldTables, decimal_mod

SUPPORTED_DEGREES = (2, 3, 5, 7, 11, 13, 17, 19)
ENV_VAR = "HASSE_MODPOLY_DIR"
_LINE = re.compile(r"^\s*(\d+)\s+(\d+)\s+([+-]?\d+)\s*$")


def bundled_modpoly_dir() -> Path:
    return Path(__file__).resolve().parent / "data" / "modpoly"


def resolve_modpoly_dir(flag: str | os.PathLike | None = None) -> Path:
    """--modpoly-dir, then $HASSE_MODPOLY_DIR, then ./data/modpoly, then the
    copy shipped inside the package."""
    if flag:
        return Path(flag)
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    local = Path("data") / "modpoly"
    if local.is_dir():
        return local
    return bundled_modpoly_dir()


class ModularPolynomial:
    def __init__(self, ell: int, coeffs: dict[tuple[int, int], str]):
        self.ell = ell
        self.coeffs = coeffs  # symmetric-completed, string values

    def __repr__(self) -> str:
        return f"ModularPolynomial({self.ell}, {len(self.coeffs)} terms)"

    @property
    def degree(self) -> int:
        return self.ell + 1

    def coefficient(self, i: int, j: int) -> str:
        return self.coeffs.get((i, j), "0")

    @lru_cache(maxsize=64)
    def reduced(self, p: int) -> np.ndarray:
        """(l+2) x (l+2) matrix of residues mod p, entry [i, k] for X^i Y^k."""
        n = self.ell + 2
        M = np.zeros((n, n), dtype=np.int64)
        for (i, k), c in self.coeffs.items():
            M[i, k] = decimal_mod(c, p)
        return M

    def y_coefficients(self, T: FieldTables, js: np.ndarray) -> np.ndarray:
        """Coefficients (in Y, constant first) of Phi(j, Y) for each j in ``js``;
        shape (len(js), l + 2), entries are field indices."""
        js = np.asarray(js, dtype=np.int64)
        M = self.reduced(T.p)
        n = self.ell + 2
        out = np.zeros((len(js), n), dtype=np.int64)
        # Horner in X for every Y-power at once
        for i in range(n - 1, -1, -1):
            out = T.add(T.mul(out, js[:, None]), M[i][None, :])
        return out

    def multiplicity_matrix(self, T: FieldTables, js, ys) -> np.ndarray:
        """mult[a, b] = multiplicity of ys[b] as a root of Phi(js[a], Y)."""
        coeffs = self.y_coefficients(T, js)
        ys = np.asarray(ys, dtype=np.int64)[None, :]
        n = self.ell + 2
        p = T.p
        mult = np.zeros((coeffs.shape[0], ys.shape[1]), dtype=np.int64)
        alive = np.ones_like(mult, dtype=bool)
        for m in range(n):
            # m-th Hasse derivative evaluated at every y
            val = np.zeros_like(mult)
            for k in range(n - 1, m - 1, -1):
                b = comb(k, m) % p
                val = T.add(T.mul(val, ys), T.mul(coeffs[:, k : k + 1], b))
            alive &= val == 0
            if not alive.any():
                break
            mult += alive
        return mult


def load_modpoly(ell: int, directory: str | os.PathLike) -> ModularPolynomial:
    if ell not in SUPPORTED_DEGREES:
        raise UnknownDegree(f"no modular polynomial of degree {ell}")
    path = Path(directory) / f"phi_{ell}.txt"
    if not path.is_file():
        raise MissingFile(str(path))
    coeffs: dict[tuple[int, int], str] = {}
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            s = line.strip()
            if not s or s.startswith("#"):
                continue
            m = _LINE.match(s)
            if not m:
                raise MalformedLine(path, lineno, s)
            i, k, c = int(m.group(1)), int(m.group(2)), m.group(3)
            if not (0 <= k <= i <= ell + 1):
                raise MalformedLine(path, lineno, s)
            c = c.lstrip("+")
            coeffs[(i, k)] = c
            coeffs[(k, i)] = c
    if coeffs.get((ell + 1, 0)) != "1":
        raise NonMonic(f"{path}: leading coefficient of X^{ell + 1} is not 1")
    return ModularPolynomial(ell, coeffs)


class ModularPolynomialStore:
    """Lazy, read-only cache of the tables in one directory."""

    def __init__(self, directory: str | os.PathLike | None = None):
        self.directory = resolve_modpoly_dir(directory)
        self._cache: dict[int, ModularPolynomial] = {}

    def __getitem__(self, ell: int) -> ModularPolynomial:
        if ell not in self._cache:
            self._cache[ell] = load_modpoly(ell, self.directory)
        return self._cache[ell]

    def __contains__(self, ell: int) -> bool:
        return ell in SUPPORTED_DEGREES and (self.directory / f"phi_{ell}.txt").is_file()


@lru_cache(maxsize=8)
def default_store(directory: str | None = None) -> ModularPolynomialStore:
    return ModularPolynomialStore(directory)
