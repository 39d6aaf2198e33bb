"""Residual against the ideal parabola for truncation at window roots 1..8."""
import argparse
import math

from hyperbolism import pipeline, timedomain
from hyperbolism.analytic import LineSpec, Shape


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--center", type=float, default=4000.0)
    ap.add_argument("--k", type=float, default=math.pi)
    ap.add_argument("--fwhm", type=float, default=1.0)
    ap.add_argument("--n-fill", type=int, default=2**17)
    args = ap.parse_args()

    fid = timedomain.synthesize_fid([LineSpec(Shape.LORENTZIAN, 1.0, args.k, 0.0, args.center)], 1 / 8192, 65536)
    a = timedomain.window_scale(args.fwhm)
    print(f"{'root':>4} {'t_cut/s':>8} {'rms':>8} {'beyond':>8} {'fwhm':>8}")
    for root in range(1, 9):
        proc = pipeline.parabolic(fid, args.k, args.fwhm, root, args.n_fill)
        fit = pipeline.parabola_residual(proc.spectrum, args.center, args.fwhm)
        width = pipeline.spectral_fwhm(proc.spectrum, args.center, 3 * args.fwhm)
        print(f"{root:4d} {timedomain.window_roots(a, root)[-1]:8.4f} {fit.rms:8.3%} {fit.beyond:8.3%} {width:8.4f}")


if __name__ == "__main__":
    main()
