#!/usr/bin/env python3
"""Drive the four figure commands end to end into one output directory.

--quick shrinks grids and ensembles for a fast smoke run (minutes); the
full-size run reproduces the default-parameter datasets and takes long
(tens of minutes to hours depending on --threads).
"""

import argparse
import sys
import time

from poledspdc.cli import main as cli_main


def run(argv):
    print("+ poledspdc", " ".join(argv))
    started = time.perf_counter()
    code = cli_main(argv)
    print(f"  -> exit {code} ({time.perf_counter() - started:.1f} s)")
    return code


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="figure_data")
    parser.add_argument("--threads", type=int, default=2)
    parser.add_argument("--quick", action="store_true",
                        help="small grids and ensembles for a smoke run")
    args = parser.parse_args()

    common = ["--outdir", args.outdir, "--threads", str(args.threads)]
    if args.quick:
        common += ["--n-samples", "2048", "--n-realizations", "16"]

    fig1 = ["fig1", *common]
    if args.quick:
        fig1 += ["--n-domains-scan", "250,500,1000"]
    jobs = [
        ["l0", "--json"],
        fig1,
        ["fig2", *common],
        ["fig3", *common],
        ["fig4", *common],
    ]
    for job in jobs:
        if run(job) != 0:
            return 1
    print(f"all figure datasets written to {args.outdir}/")
    return 0


if __name__ == "__main__":
    sys.exit(main())
