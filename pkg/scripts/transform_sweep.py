"""Carry circles through the hyperbolism for powers 0..1 and all ellipse kinds.

Prints peak height, FWHM and area of each physical curve and writes the
curves through the ``transform`` command.
"""
import argparse
import math
from pathlib import Path

import numpy as np

from hyperbolism import cli, geometry


def half_width(u, v):
    order = np.argsort(u)
    u, v = u[order], v[order]
    above = u[v >= v.max() / 2]
    return above.max() - above.min()


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("out/transform_sweep"))
    ap.add_argument("--r", type=float, default=0.5)
    ap.add_argument("--k", type=float, default=0.4)
    args = ap.parse_args()

    opts = geometry.ProtocolOptions(u_max_fwhm=None)
    print(f"{'kind':>4} {'p':>6} {'peak':>9} {'fwhm':>9} {'area':>9}")
    for kind in geometry.Kind:
        for p in np.arange(9) / 8:
            c = geometry.parametric_curve(kind, 0.0, args.r, args.k, p, 4096, options=opts)
            area = geometry.polygon_area(c.u, c.v) if p < 1 else math.nan
            print(f"{kind.value:>4} {p:6.3f} {c.v.max():9.4f} {half_width(c.u, c.v):9.4f} {area:9.4f}")
    print(f"Lorentzian reference: peak {2 * args.r / args.k:.4f}, fwhm {args.k / math.pi:.4f}, area {args.r:.4f}")

    for phi in (0, 90, 237):
        cli.main(["transform", "--phi-deg", str(phi), "--r", str(args.r), "--k", str(args.k),
                  "--p-sweep", "0", "1", "1/8", "--out", str(args.out / f"phi{phi}")])
    cli.main(["transform", "--p", "-1", "--out", str(args.out / "piriform")])


if __name__ == "__main__":
    main()
