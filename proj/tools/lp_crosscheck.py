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

"""Solve an LP file written by `blotto export-lp` with scipy's HiGHS and
compare the optimum against a value.

    blotto export-lp --instance inst.json --out model.lp
    blotto solve-lp --instance inst.json --out eq.json
    python3 tools/lp_crosscheck.py model.lp --expect="$(jq .value eq.json)"

Only the subset of the CPLEX LP format that export-lp emits is read.
"""

import argparse
import re
import sys

import numpy as np
from scipy.optimize import linprog

TERM = re.compile(r"([+-])\s*(\S+)\s+(\S+)")


def parse_terms(text):
    text = text.strip()
    if not text.startswith(("+", "-")):
        text = "+ " + text
    out = []
    for sign, coef, name in TERM.findall(text):
        value = float(coef)
        out.append((-value if sign == "-" else value, name))
    return out


def read_lp(path):
    sense = None
    objective = []
    rows = []
    bounds = {}
    names = []
    section = None
    pending = ""

    def note(name):
        if name not in bounds:
            bounds[name] = (0.0, None)
            names.append(name)

    for raw in open(path, encoding="utf-8"):
        line = raw.rstrip("\n")
        if not line.strip() or line.startswith("\\"):
            continue
        head = line.strip()
        if head in ("Minimize", "Maximize"):
            sense = head
            section = "obj"
            continue
        if head == "Subject To":
            section = "rows"
            continue
        if head == "Bounds":
            section = "bounds"
            continue
        if head == "End":
            break
        if section in ("obj", "rows") and not re.search(r"^\s*\S+:", line):
            pending += " " + head  # wrapped continuation
        else:
            pending = head if section != "bounds" else ""
        if section == "obj":
            body = pending.split(":", 1)[1]
            objective = [] if body.strip() == "0" else parse_terms(body)
        elif section == "rows":
            name, body = pending.split(":", 1)
            m = re.match(r"(.*?)(<=|>=|=)\s*(\S+)\s*$", body)
            if not m:
                continue  # the row wraps onto the next line
            rows.append((name.strip(), parse_terms(m.group(1)), m.group(2), float(m.group(3))))
        elif section == "bounds":
            parts = head.split()
            if len(parts) == 2 and parts[1] == "free":
                note(parts[0])
                bounds[parts[0]] = (None, None)
            elif len(parts) == 3 and parts[1] == "=":
                note(parts[0])
                bounds[parts[0]] = (float(parts[2]), float(parts[2]))
            elif len(parts) == 3 and parts[1] == ">=":
                note(parts[0])
                bounds[parts[0]] = (float(parts[2]), None)
            elif len(parts) == 5:
                note(parts[2])
                bounds[parts[2]] = (float(parts[0]), float(parts[4]))
            else:
                raise ValueError(f"unsupported bound line: {head}")
    for _, terms, _, _ in rows:
        for _, name in terms:
            note(name)
    for _, name in objective:
        note(name)
    return sense, objective, rows, bounds, names


def solve(path):
    sense, objective, rows, bounds, names = read_lp(path)
    index = {n: j for j, n in enumerate(names)}
    c = np.zeros(len(names))
    for coef, name in objective:
        c[index[name]] += coef
    if sense == "Maximize":
        c = -c
    a_ub, b_ub, a_eq, b_eq = [], [], [], []
    for _, terms, op, rhs in rows:
        row = np.zeros(len(names))
        for coef, name in terms:
            row[index[name]] += coef
        if op == "=":
            a_eq.append(row)
            b_eq.append(rhs)
        elif op == "<=":
            a_ub.append(row)
            b_ub.append(rhs)
        else:
            a_ub.append(-row)
            b_ub.append(-rhs)
    res = linprog(
        c,
        A_ub=np.array(a_ub) if a_ub else None,
        b_ub=np.array(b_ub) if b_ub else None,
        A_eq=np.array(a_eq) if a_eq else None,
        b_eq=np.array(b_eq) if b_eq else None,
        bounds=[bounds[n] for n in names],
        method="highs",
    )
    if res.status != 0:
        return res.message, None
    return "optimal", (-res.fun if sense == "Maximize" else res.fun)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("lp", help="LP file from blotto export-lp")
    parser.add_argument("--expect", type=float, help="value to compare against")
    parser.add_argument("--tol", type=float, default=1e-6)
    args = parser.parse_args(argv)
    status, value = solve(args.lp)
    if value is None:
        print(f"scipy: {status}")
        return 2
    print(f"scipy optimum: {value:.12g}")
    if args.expect is not None:
        diff = abs(value - args.expect)
        print(f"expected {args.expect:.12g}, |diff| = {diff:.3g}")
        return 0 if diff <= args.tol else 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
