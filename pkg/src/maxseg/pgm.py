"""PGM (portable graymap) reading and writing: P2 ASCII and P5 binary.

P5 samples are 1 byte for maxval <= 255 and 2 bytes big-endian otherwise,
up to maxval 65535. Parse errors carry the byte offset of the problem.
"""
from __future__ import annotations

import numpy as np


class PgmError(ValueError):
    """Malformed PGM input; message names the offending byte offset."""


_WS = b" \t\r\n\x0b\x0c"


class _Scanner:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def fail(self, message: str):
        raise PgmError(f"byte {self.pos}: {message}")

    def skip_separators(self) -> None:
        """Advance over whitespace and '#' comments (comment runs to end of line)."""
        data = self.data
        while self.pos < len(data):
            b = data[self.pos : self.pos + 1]
            if b in (b"#",):
                nl = data.find(b"\n", self.pos)
                self.pos = len(data) if nl < 0 else nl + 1
            elif b and b in _WS:
                self.pos += 1
            else:
                return

    def read_token(self, what: str) -> bytes:
        self.skip_separators()
        if self.pos >= len(self.data):
            self.fail(f"unexpected end of file while reading {what}")
        start = self.pos
        while self.pos < len(self.data):
            b = self.data[self.pos : self.pos + 1]
            if b in _WS or b == b"#":
                break
            self.pos += 1
        return self.data[start : self.pos]

    def read_uint(self, what: str, upper: int) -> int:
        start_pos = self.pos
        token = self.read_token(what)
        if not token.isdigit():
            self.pos = start_pos
            self.skip_separators()
            self.fail(f"expected unsigned integer for {what}, got {token!r}")
        value = int(token)
        if value > upper:
            self.pos = start_pos
            self.skip_separators()
            self.fail(f"{what} {value} exceeds limit {upper}")
        return value


def parse_pgm(data: bytes) -> tuple[np.ndarray, int]:
    """Decode PGM bytes into (2D uint16 array, maxval)."""
    sc = _Scanner(data)
    magic = sc.read_token("magic number")
    if magic not in (b"P2", b"P5"):
        sc.pos = 0
        sc.fail(f"unsupported magic {magic!r}, expected P2 or P5")
    width = sc.read_uint("width", 1 << 30)
    height = sc.read_uint("height", 1 << 30)
    if width == 0 or height == 0:
        sc.fail("width and height must be positive")
    maxval = sc.read_uint("maxval", 65535)
    if maxval == 0:
        sc.fail("maxval must be positive")

    count = width * height
    if magic == b"P2":
        flat = np.empty(count, dtype=np.uint16)
        for i in range(count):
            flat[i] = sc.read_uint(f"sample {i}", maxval)
        sc.skip_separators()
        if sc.pos < len(data):
            sc.fail("trailing data after image samples")
    else:
        # exactly one whitespace byte separates maxval from the payload
        if sc.pos >= len(data) or data[sc.pos : sc.pos + 1] not in _WS:
            sc.fail("expected single whitespace byte before binary samples")
        sc.pos += 1
        itemsize = 1 if maxval <= 255 else 2
        need = count * itemsize
        if len(data) - sc.pos < need:
            sc.pos = len(data)
            sc.fail(f"truncated payload, need {need} sample bytes")
        payload = data[sc.pos : sc.pos + need]
        sc.pos += need
        if sc.pos < len(data):
            sc.fail("trailing data after binary samples")
        dtype = np.uint8 if itemsize == 1 else np.dtype(">u2")
        flat = np.frombuffer(payload, dtype=dtype).astype(np.uint16)
        high = int(flat.max())
        if high > maxval:
            sc.fail(f"sample value {high} exceeds maxval {maxval}")
    return flat.reshape(height, width), maxval


def read_pgm(path) -> tuple[np.ndarray, int]:
    with open(path, "rb") as fh:
        return parse_pgm(fh.read())


def encode_pgm(pixels, maxval: int, binary: bool = True) -> bytes:
    """Encode a 2D nonnegative integer array as canonical P5 (or P2) bytes."""
    arr = np.asarray(pixels)
    if arr.ndim != 2 or arr.size == 0:
        raise ValueError("pixels must be a nonempty 2D array")
    maxval = int(maxval)
    if not (1 <= maxval <= 65535):
        raise ValueError("maxval must be in [1, 65535]")
    if arr.min() < 0 or arr.max() > maxval:
        raise ValueError("pixel values must lie in [0, maxval]")
    height, width = arr.shape
    magic = b"P5" if binary else b"P2"
    header = b"%s\n%d %d\n%d\n" % (magic, width, height, maxval)
    if binary:
        dtype = np.uint8 if maxval <= 255 else np.dtype(">u2")
        return header + arr.astype(dtype).tobytes()
    rows = [" ".join(str(int(v)) for v in row) for row in arr]
    return header + ("\n".join(rows) + "\n").encode("ascii")


def write_pgm(path, pixels, maxval: int, binary: bool = True) -> None:
    with open(path, "wb") as fh:
        fh.write(encode_pgm(pixels, maxval, binary=binary))
