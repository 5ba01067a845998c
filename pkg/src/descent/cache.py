"""
On-disk cache of enumerated groups and their structure constants.

Group file layout (little endian):

    magic  b"DWB1"
    u16    format version
    8s     type tag, NUL padded ("B5", "I8", ...)
    u16    rank
    u32    |W|
    u16    number of positive roots N
    u8     bytes per root image (1 or 2)

followed by |W| root-image records of 2N entries each, in length order, and
then |W| right-descent bitmasks of two bytes each.
"""

from __future__ import annotations

import os
import struct
import tempfile
from pathlib import Path

import numpy as np

from .algebra import DescentAlgebra, StructureConstants
from .coxeter import CoxeterSystem, CoxeterType, _dihedral_roots, _root_system, build_coxeter_system

MAGIC = b"DWB1"
VERSION = 1
HEADER = struct.Struct("<4sH8sHIHB")


class CacheMismatch(Exception):
    pass


def default_cache_root() -> Path:
    env = os.environ.get("DESCENT_CACHE")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "descent"


def _atomic_write(path: Path, data: bytes) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def encode_system(system: CoxeterSystem) -> bytes:
    width = 1 if 2 * system.N <= 256 else 2
    dtype = np.dtype("<u1") if width == 1 else np.dtype("<u2")
    head = HEADER.pack(MAGIC, VERSION, system.ctype.tag.encode("ascii"), system.rank,
                       system.size, system.N, width)
    body = system.perm.astype(dtype).tobytes()
    desc = system.right_descents.astype("<u2").tobytes()
    return head + body + desc


def decode_system(data: bytes, ctype: CoxeterType) -> CoxeterSystem:
    magic, version, tag, rank, size, N, width = HEADER.unpack_from(data)
    if magic != MAGIC or version != VERSION:
        raise CacheMismatch("unknown cache format")
    if tag.rstrip(b"\0").decode("ascii") != ctype.tag or rank != ctype.rank or size != ctype.order():
        raise CacheMismatch(f"cache does not hold {ctype.name}")
    if ctype.family == "I":
        n_roots, gens, supp = _dihedral_roots(ctype.m)
    else:
        n_roots, gens, supp = _root_system(ctype)
    if n_roots != N:
        raise CacheMismatch("root count differs")
    dtype = np.dtype("<u1") if width == 1 else np.dtype("<u2")
    off = HEADER.size
    count = size * 2 * N
    perm = np.frombuffer(data, dtype=dtype, count=count, offset=off).reshape(size, 2 * N)
    off += count * width
    desc = np.frombuffer(data, dtype="<u2", count=size, offset=off)
    perm = perm.astype(np.uint8 if width == 1 else np.uint16)
    system = CoxeterSystem(ctype, N, gens, supp, perm)
    if not np.array_equal(system.right_descents, desc):
        raise CacheMismatch("descent records disagree with root images")
    return system


def save_constants(sc: StructureConstants, path: Path) -> None:
    lines = [f'{{"J": {J}, "K": {K}, "terms": {[list(t) for t in sc.terms(J, K)]}}}\n'
             for J in range(sc.dim) for K in range(sc.dim)]
    _atomic_write(path, "".join(lines).encode("utf-8"))


class Cache:
    """Group and structure-constant files under one root directory."""

    def __init__(self, root=None, enabled: bool = True):
        self.root = Path(root) if root is not None else default_cache_root()
        self.enabled = enabled

    def _paths(self, ctype: CoxeterType):
        return self.root / f"{ctype.tag}.dwb", self.root / f"{ctype.tag}.sc.jsonl"

    def system(self, ctype: CoxeterType, allow_large: bool = False) -> CoxeterSystem:
        gpath, _ = self._paths(ctype)
        if self.enabled and gpath.exists():
            try:
                return decode_system(gpath.read_bytes(), ctype)
            except (CacheMismatch, struct.error, ValueError):
                pass
        system = build_coxeter_system(ctype, allow_large=allow_large)
        if self.enabled:
            _atomic_write(gpath, encode_system(system))
        return system

    def algebra(self, ctype: CoxeterType, allow_large: bool = False) -> DescentAlgebra:
        system = self.system(ctype, allow_large)
        _, spath = self._paths(ctype)
        sc = None
        if self.enabled and spath.exists():
            try:
                sc = StructureConstants.from_jsonl(spath)
                if sc.rank != ctype.rank:
                    sc = None
            except (ValueError, KeyError):
                sc = None
        alg = DescentAlgebra(system, sc)
        if self.enabled and sc is None:
            save_constants(alg.sc, spath)
        return alg
