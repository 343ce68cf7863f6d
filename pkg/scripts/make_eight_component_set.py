#!/usr/bin/env python3
"""Regenerate the frozen eight-component benchmark set.

Writes src/modespect/data/eight_component_set.ini with the exact values the
package ships: 8 components drawn once from numpy.random.default_rng(seed=1),
frequencies uniform on [300, 11000) Hz (sorted), dampings uniform on
[20, 150) 1/s, unit amplitudes, zero phases.  Rerunning must reproduce the
committed file byte for byte.
"""

import argparse
from pathlib import Path

import numpy as np

SEED = 1
FREQ_RANGE = (300.0, 11_000.0)
DAMPING_RANGE = (20.0, 150.0)
N_COMPONENTS = 8

HEADER = """\
# Fixed eight-component benchmark set (preset "paper-case-3").
# Drawn once from numpy.random.default_rng(seed={seed}): frequencies uniform on
# [{f0:g}, {f1:g}) Hz (sorted ascending), dampings uniform on [{d0:g}, {d1:g}) 1/s;
# all amplitudes 1, all phases 0.  The values below are frozen; regenerate
# verbatim with scripts/make_eight_component_set.py.
#
# Each entry: amplitude frequency_hz damping phase_rad
[components]
"""


def main() -> None:
    default_out = (
        Path(__file__).resolve().parent.parent
        / "src"
        / "modespect"
        / "data"
        / "eight_component_set.ini"
    )
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=default_out)
    args = parser.parse_args()

    rng = np.random.default_rng(SEED)
    freqs = np.sort(rng.uniform(*FREQ_RANGE, N_COMPONENTS))
    damps = rng.uniform(*DAMPING_RANGE, N_COMPONENTS)

    lines = [
        HEADER.format(
            seed=SEED,
            f0=FREQ_RANGE[0],
            f1=FREQ_RANGE[1],
            d0=DAMPING_RANGE[0],
            d1=DAMPING_RANGE[1],
        )
    ]
    for i, (f, d) in enumerate(zip(freqs, damps), start=1):
        lines.append(f"mode{i} = 1 {format(f, '.17g')} {format(d, '.17g')} 0\n")
    args.out.write_text("".join(lines))
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
