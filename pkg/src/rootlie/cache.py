"""Quiver files and a persistent on-disk store of Hall polynomials.

Records are plain text, one per key, written to a temp file and renamed into
place so readers never see a partial record.  A per-key file lock makes
concurrent misses on the same key compute once.
"""

from __future__ import annotations

import hashlib
import os
import tempfile
import warnings
from dataclasses import dataclass
from pathlib import Path

from filelock import FileLock

from rootlie.hall import HallPolynomial, hall_polynomial
from rootlie.labels import parse_iso
from rootlie.poly import IntPolynomial
from rootlie.quiver import Arrow, Quiver, QuiverError, Relation

CACHE_ENV = "ROOTLIE_CACHE_DIR"
RECORD_VERSION = "rootlie-hall 1"


class QuiverParseError(QuiverError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


class CacheWarning(UserWarning):
    pass


# quiver files -------------------------------------------------------------------------
def _vertex_order(v: str):
    return (0, int(v), "") if v.lstrip("-").isdigit() else (1, 0, v)


def parse_quiver_file(text: str) -> Quiver:
    """Grammar, one statement per line, '#' starts a comment:

        vertex <id>
        arrow <id>: <src> -> <dst>
        relation <+-c> <path> [<+-c> <path> ...]     path = arrow ids joined by '.'

    Statements may come in any order; vertices are sorted (numerically when all
    ids are integers) and arrows by name, so the result is canonical.
    """
    verts, arrows, rels = [], [], []
    where = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "vertex":
            if not rest or len(rest.split()) != 1:
                raise QuiverParseError(lineno, "expected 'vertex <id>'")
            if rest in verts:
                raise QuiverParseError(lineno, f"duplicate vertex {rest}")
            verts.append(rest)
        elif head == "arrow":
            name, colon, ends = rest.partition(":")
            src, arrow, dst = ends.partition("->")
            name, src, dst = name.strip(), src.strip(), dst.strip()
            if not colon or not arrow or not name or not src or not dst or " " in name:
                raise QuiverParseError(lineno, "expected 'arrow <id>: <src> -> <dst>'")
            if src == dst:
                raise QuiverParseError(lineno, f"loop at vertex {src} not supported")
            arrows.append(Arrow(name, src, dst))
            where[name] = lineno
        elif head == "relation":
            toks = rest.split()
            if not toks or len(toks) % 2:
                raise QuiverParseError(lineno, "expected 'relation <coef> <path> ...'")
            terms = []
            for c, pth in zip(toks[::2], toks[1::2]):
                try:
                    coef = int(c)
                except ValueError:
                    raise QuiverParseError(lineno, f"bad coefficient {c!r}") from None
                terms.append((coef, tuple(pth.split("."))))
            rels.append((lineno, Relation(tuple(sorted(terms)))))
        else:
            raise QuiverParseError(lineno, f"unknown statement {head!r}")
    vset = set(verts)
    for a in arrows:
        for v in (a.source, a.target):
            if v not in vset:
                raise QuiverParseError(where[a.name], f"unknown vertex {v}")
    names = set()
    for a in arrows:
        if a.name in names:
            raise QuiverParseError(where[a.name], f"duplicate arrow {a.name}")
        names.add(a.name)
    for lineno, r in rels:
        for _, pth in r.terms:
            for x in pth:
                if x not in names:
                    raise QuiverParseError(lineno, f"unknown arrow {x}")
    if not verts:
        raise QuiverParseError(0, "no vertices")
    try:
        return Quiver(tuple(sorted(verts, key=_vertex_order)), tuple(sorted(arrows, key=lambda a: a.name)),
                      tuple(r for _, r in rels))
    except QuiverError as exc:
        line = rels[0][0] if rels else 0
        raise QuiverParseError(line, str(exc)) from None


def quiver_hash(q: Quiver) -> str:
    return hashlib.sha256(q.content_key().encode()).hexdigest()[:16]


@dataclass(frozen=True)
class QuiverFile:
    path: str
    quiver: Quiver
    content_hash: str

    @classmethod
    def load(cls, path) -> "QuiverFile":
        text = Path(path).read_text(encoding="utf-8")
        q = parse_quiver_file(text)
        return cls(str(path), q, quiver_hash(q))


# hall polynomial records ----------------------------------------------------------------
def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "rootlie"


def format_record(qhash: str, h: HallPolynomial) -> str:
    body = "\n".join([
        RECORD_VERSION,
        f"quiver {qhash}",
        f"target {h.target}",
        f"quot {h.quot}",
        f"sub {h.sub}",
        "coefficients " + " ".join(str(c) for c in h.poly.coefficients),
        "primes " + " ".join(str(p) for p in h.primes_used),
        f"held_out {h.held_out}",
        f"degree_bound {h.degree_bound}",
    ]) + "\n"
    return body + "checksum " + hashlib.sha256(body.encode()).hexdigest() + "\n"


def parse_record(text: str, qhash: str, key: tuple) -> HallPolynomial:
    """Raise ValueError unless text is an intact record for this key."""
    lines = text.split("\n")
    if len(lines) != 11 or lines[-1] != "" or not lines[9].startswith("checksum "):
        raise ValueError("malformed record")
    body = "\n".join(lines[:9]) + "\n"
    if hashlib.sha256(body.encode()).hexdigest() != lines[9][len("checksum "):]:
        raise ValueError("checksum mismatch")
    fields = dict(line.split(" ", 1) if " " in line else (line, "") for line in lines[1:9])
    if lines[0] != RECORD_VERSION or fields["quiver"] != qhash:
        raise ValueError("record for another key")
    target, quot, sub = (parse_iso(fields[k]) for k in ("target", "quot", "sub"))
    if (str(target), str(quot), str(sub)) != tuple(str(x) for x in key):
        raise ValueError("record for another key")
    coeffs = [int(c) for c in fields["coefficients"].split()]
    primes = tuple(int(p) for p in fields["primes"].split())
    return HallPolynomial(target, quot, sub, IntPolynomial(coeffs), primes, int(fields["held_out"]),
                          int(fields["degree_bound"]))


class CacheStore:
    def __init__(self, directory=None):
        self.directory = Path(directory) if directory is not None else default_cache_dir()

    def path_for(self, qhash: str, key: tuple, primes=None) -> Path:
        parts = [qhash] + [str(k) for k in key] + [",".join(map(str, primes or ()))]
        name = hashlib.sha256("|".join(parts).encode()).hexdigest()[:24]
        return self.directory / qhash / f"{name}.hall"

    def _read(self, path: Path, qhash: str, key: tuple, warn: bool = True):
        try:
            text = path.read_text(encoding="utf-8")
        except FileNotFoundError:
            return None
        try:
            return parse_record(text, qhash, key)
        except (ValueError, KeyError) as exc:
            if warn:
                warnings.warn(f"repairing corrupt cache record {path.name}: {exc}", CacheWarning, stacklevel=3)
            return None

    def _write(self, path: Path, text: str):
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".hall")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(text)
                fh.flush()
                os.fsync(fh.fileno())
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def get_or_compute(self, q: Quiver, target, quot, sub, compute=None, primes=None) -> HallPolynomial:
        """primes, when given, is part of the key (it changes the recorded fit points)."""
        key = tuple(parse_iso(x) if isinstance(x, str) else x for x in (target, quot, sub))
        qhash = quiver_hash(q)
        path = self.path_for(qhash, key, primes)
        hit = self._read(path, qhash, key)
        if hit is not None:
            return hit
        path.parent.mkdir(parents=True, exist_ok=True)
        with FileLock(str(path) + ".lock"):
            # another process may have finished while we waited
            hit = self._read(path, qhash, key, warn=False)
            if hit is not None:
                return hit
            h = (compute or hall_polynomial)(q, *key)
            # fitting already checked the held-out prime; the record stores it
            self._write(path, format_record(qhash, h))
            return h


def cache_get_or_compute(q: Quiver, target, quot, sub, cache_dir=None, compute=None,
                         primes=None) -> HallPolynomial:
    return CacheStore(cache_dir).get_or_compute(q, target, quot, sub, compute, primes)
