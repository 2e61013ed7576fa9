#!/usr/bin/env python3
"""Fetch the 512x512 gray Lena image and store it as a binary PGM.

The image cannot be redistributed with this repository. It is extracted from
the scipy 0.16.1 source distribution on PyPI, which still shipped it as
scipy/misc/lena.dat (a pickled 512x512 integer array).

Usage: tools/fetch_lena.py [output.pgm]   (default: testdata/external/lena512.pgm)
"""

import hashlib
import io
import pickle
import sys
import tarfile
import urllib.request
from pathlib import Path

URL = (
    "https://files.pythonhosted.org/packages/7b/e1/"
    "ecc1820874c396a094e6df30d4d3aa8119d4987c5ff0b9caec73db362849/scipy-0.16.1.tar.gz"
)
SHA256 = "ecd1efbb1c038accb0516151d1e6679809c6010288765eb5da6051550bf52260"
MEMBER = "scipy-0.16.1/scipy/misc/lena.dat"


def main() -> int:
    root = Path(__file__).resolve().parent.parent
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else root / "testdata/external/lena512.pgm"

    with urllib.request.urlopen(URL) as response:
        blob = response.read()
    digest = hashlib.sha256(blob).hexdigest()
    if digest != SHA256:
        print(f"checksum mismatch: {digest}", file=sys.stderr)
        return 1

    with tarfile.open(fileobj=io.BytesIO(blob), mode="r:gz") as archive:
        raw = archive.extractfile(MEMBER).read()
    rows = pickle.loads(raw, encoding="latin1")
    pixels = bytes(int(v) for row in rows for v in row)
    if len(rows) != 512 or len(pixels) != 512 * 512:
        print("unexpected image shape", file=sys.stderr)
        return 1

    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_bytes(b"P5\n512 512\n255\n" + pixels)
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
