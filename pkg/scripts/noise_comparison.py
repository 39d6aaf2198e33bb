"""S/N and line shape of Lorentzian, Gaussian and parabolic processing of a
noisy decay, over several noise seeds."""
import argparse
import math

import numpy as np

from hyperbolism import pipeline, spectrum, timedomain
from hyperbolism.analytic import LineSpec, Shape


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--target-snr", type=float, default=10.0)
    args = ap.parse_args()

    center, k, fwhm, n_fill = 4000.0, math.pi, 1.0, 2**17
    clean = timedomain.synthesize_fid([LineSpec(Shape.LORENTZIAN, 1.0, k, 0.0, center)], 1 / 8192, 65536)
    runs = {"none": lambda s: pipeline.plain(s, n_fill)}
    for tau in (timedomain.gaussian_tau_for_fwhm(k / math.pi), timedomain.gaussian_tau_matching_parabola(fwhm)):
        runs[f"gauss tau={tau:.3f}"] = lambda s, tau=tau: pipeline.gaussian(s, k, tau, n_fill)
    for root in (1, 2, 3, 4, 5):
        runs[f"parabolic root {root}"] = lambda s, root=root: pipeline.parabolic(s, k, fwhm, root, n_fill)

    table = {name: [] for name in runs}
    for seed in range(args.seeds):
        noisy = timedomain.add_white_noise(clean, timedomain.NoiseSpec(seed, target_snr=args.target_snr,
                                                                       zero_fill=n_fill))
        for name, run in runs.items():
            pc, pn = run(clean).spectrum, run(noisy).spectrum
            peak, quiet = spectrum.default_regions(pc)
            table[name].append(spectrum.measure_snr(pn, peak, quiet, signal=pc))
    print(f"{'run':>20} {'S/N mean':>10} {'S/N sd':>8} {'fwhm':>7} {'parab rms':>10}")
    for name, run in runs.items():
        pc = run(clean).spectrum
        width = pipeline.spectral_fwhm(pc, center, 3 * fwhm)
        rms = pipeline.parabola_residual(pc, center, fwhm).rms
        print(f"{name:>20} {np.mean(table[name]):10.3f} {np.std(table[name]):8.3f} {width:7.3f} {rms:10.3%}")


if __name__ == "__main__":
    main()
