#!/usr/bin/env python3
"""Solve an LP-format binary program with HiGHS and write name=value lines.

usage: highs_solve.py INPUT OUTPUT [TIMEOUT]
"""
import sys

import highspy


def main() -> int:
    if len(sys.argv) < 3:
        print(__doc__, file=sys.stderr)
        return 2
    src, dst = sys.argv[1], sys.argv[2]
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    if len(sys.argv) > 3:
        h.setOptionValue("time_limit", float(sys.argv[3]))
    if h.readModel(src) != highspy.HighsStatus.kOk:
        print(f"cannot read {src}", file=sys.stderr)
        return 1
    h.run()
    status = h.getModelStatus()
    info = h.getInfo()
    with open(dst, "w") as out:
        if status == highspy.HighsModelStatus.kInfeasible:
            out.write("# status infeasible\n")
            return 0
        if info.primal_solution_status == 0:
            return 0
        label = "optimal" if status == highspy.HighsModelStatus.kOptimal else "time limit"
        out.write(f"# status {label}\n# objective {info.objective_function_value:g}\n")
        lp = h.getLp()
        values = h.getSolution().col_value
        for name, v in zip(lp.col_names_, values):
            out.write(f"{name}={int(round(v))}\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
