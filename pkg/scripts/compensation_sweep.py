"""Tail amplitude off the parabola support for compensation times 4/3..2/3 T2.

The point value at sqrt(2)/2 + 5 df is compared with the mean over the
band sqrt(2)/2 + [3, 15] df, which averages out truncation ripple.
"""
import argparse
import math

import numpy as np

from hyperbolism import pipeline, timedomain
from hyperbolism.analytic import LineSpec, Shape


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--roots", type=lambda s: [int(x) for x in s.split(",")], default=[3, 5, 8])
    args = ap.parse_args()

    center, k, fwhm = 4000.0, math.pi, 1.0
    fid = timedomain.synthesize_fid([LineSpec(Shape.LORENTZIAN, 1.0, k, 0.0, center)], 1 / 8192, 65536)
    factors = [4 / 3 - i / 12 for i in range(9)]
    for root in args.roots:
        print(f"root {root}")
        print(f"{'T2c/T2':>7} {'point':>9} {'band':>9} {'fwhm':>8}")
        for f in factors:
            spec = pipeline.parabolic(fid, k / f, fwhm, root, 2**17).spectrum
            y = pipeline.normalized_real(spec)
            d = spec.freq - center
            edge = fwhm / math.sqrt(2)
            band = (d > edge + 3 * spec.df) & (d < edge + 15 * spec.df)
            point = pipeline.tail_amplitude(spec, center, edge + 5 * spec.df)
            width = pipeline.spectral_fwhm(spec, center, 3 * fwhm)
            print(f"{f:7.4f} {point:+9.4f} {np.mean(y[band]):+9.4f} {width:8.4f}")


if __name__ == "__main__":
    main()
