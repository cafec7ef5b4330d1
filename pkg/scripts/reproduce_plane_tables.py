#!/usr/bin/env python3
"""Print the plane cusp-count grids for degrees 3 through 6.

Row t counts tangency conditions, columns locate the cusp (free, on a line,
at a point).  Only the t=0 rows are computable from scratch; tangency rows
need stored nodal inputs and degrade to needs-oracle unless tables are passed
on the command line.
"""
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from cuspcount.cusp import CuspEngine
from cuspcount.nodal import NodalOracle, OracleTable
from cuspcount.tables import TableSpec, build_table, render


def main(argv: list) -> None:
    table = OracleTable()
    for path in argv:
        table.load(path)
    engine = CuspEngine(NodalOracle(table=table))
    for d in (3, 4, 5, 6):
        result = build_table(engine, TableSpec(2, d, 0))
        print("degree %d:" % d)
        print(render(result, "plain"))
        print()


if __name__ == "__main__":
    main(sys.argv[1:])
