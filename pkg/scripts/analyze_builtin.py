#!/usr/bin/env python3
"""Print the full analysis of every built-in dataset, plus verification
of the constructions that model them."""

import argparse

from bellbox.hilbert import isomorphism_by_name
from bellbox.models import FIXTURE_NAMES, MODEL_NAMES, get_fixture, get_model
from bellbox.report import ModelReport, build_report, render_machine, render_text


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--format", choices=("text", "machine"), default="text")
    parser.add_argument("--iso", choices=("canonical", "swapped"), default="canonical")
    parser.add_argument("--alpha", type=float, default=0.0)
    parser.add_argument("--beta", type=float, default=0.0)
    args = parser.parse_args()

    render = render_machine if args.format == "machine" else render_text
    iso = isomorphism_by_name(args.iso)

    models_by_fixture = {}
    for name in MODEL_NAMES:
        model = get_model(name, args.alpha, args.beta)
        models_by_fixture.setdefault(model.fixture_name, []).append(model)

    for fixture_name in FIXTURE_NAMES:
        fixture = get_fixture(fixture_name)
        print(f"=== {fixture_name} ===")
        for model in models_by_fixture.get(fixture_name, [None]):
            block = None
            if model is not None:
                verdict = model.verify(fixture.experiment, iso=iso)
                block = ModelReport(model.name, args.alpha, args.beta, iso, verdict)
            print(render(build_report(fixture.experiment, model=block)), end="")
        print()


if __name__ == "__main__":
    main()
