#!/usr/bin/env python3
"""Sweep the two phases of the vessel constructions over a grid and
report how far the predicted probabilities and the Bell expectation
drift from their zero-phase values (they should not drift at all)."""

import argparse
import math

from bellbox.hilbert import born_probabilities
from bellbox.models import vessels_alternative_model, vessels_model


def sweep(builder, steps: int) -> tuple[float, float]:
    reference = builder(0.0, 0.0)
    ref_tables = {
        pair: born_probabilities(reference.state, m).values
        for pair, m in reference.measurements.items()
    }
    worst_prob = 0.0
    worst_bell = 0.0
    for i in range(steps):
        alpha = -math.pi + 2.0 * math.pi * i / max(steps - 1, 1)
        for j in range(steps):
            beta = -math.pi + 2.0 * math.pi * j / max(steps - 1, 1)
            model = builder(alpha, beta)
            for pair, m in model.measurements.items():
                got = born_probabilities(model.state, m).values
                worst_prob = max(
                    worst_prob,
                    max(abs(a - b) for a, b in zip(got, ref_tables[pair])),
                )
            verdict = model.verify()
            worst_bell = max(worst_bell, abs(verdict.chsh_from_model - 4.0))
    return worst_prob, worst_bell


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--steps", type=int, default=15, help="grid points per phase")
    args = parser.parse_args()

    for label, builder in (
        ("entangled-state construction", vessels_model),
        ("product-state construction", vessels_alternative_model),
    ):
        worst_prob, worst_bell = sweep(builder, args.steps)
        print(
            f"{label}: max probability drift {worst_prob:.3e}, "
            f"max |<B> - 4| {worst_bell:.3e} over {args.steps}x{args.steps} phases"
        )


if __name__ == "__main__":
    main()
