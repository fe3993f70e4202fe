# Copyright 2026 The Blotto Solver Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Plot learning or ascent traces written by `blotto learn` / `blotto ascend`.

    python3 tools/plot_traces.py trace.csv [more.csv ...] -o traces.png

Learning traces (iteration,time_s,gap,value) are drawn as gap against
iteration on a log scale. Ascent traces (t,V,i_star,eta,...) are drawn as V
against t.
"""

import argparse
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("traces", nargs="+", help="trace CSV files")
    parser.add_argument("-o", "--out", default="traces.png", help="image file")
    args = parser.parse_args(argv)

    fig, ax = plt.subplots(figsize=(7, 4.5))
    kinds = set()
    for path in args.traces:
        df = pd.read_csv(path)
        if "gap" in df.columns:
            kinds.add("learn")
            ax.plot(df["iteration"], df["gap"], label=path)
        elif "V" in df.columns:
            kinds.add("ascend")
            ax.plot(df["t"], df["V"], label=path)
        else:
            print(f"{path}: unrecognized trace header {list(df.columns)}", file=sys.stderr)
            return 1
    if len(kinds) > 1:
        print("cannot mix learning and ascent traces in one plot", file=sys.stderr)
        return 1
    if kinds == {"learn"}:
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.set_xlabel("iteration")
        ax.set_ylabel("saddle-point gap")
    else:
        ax.set_xlabel("iteration")
        ax.set_ylabel("V(sigma)")
    ax.legend(fontsize="small")
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)
    return 0


if __name__ == "__main__":
    sys.exit(main())
