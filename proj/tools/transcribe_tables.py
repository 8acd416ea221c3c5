#!/usr/bin/env python3
"""Extract the four bound tables from the LaTeX source into reference_tables.csv.

Cells come in four shapes:
  ${\raisebox..{${}_{P}$}}^{U}_{L}$   upper P+U, lower P+L
  ${\raisebox..{${}_{P}$}}_L^U$       same with the scripts swapped
  ${\raisebox..{${}_{P}$}_L^U}$       same, brace placement differs
  ${}^{U}_{L}$                         full values (U may be \\infty)
"""
import csv
import re
import sys

TABLES = {"tab:eigenvalues0": (1, 1, 0), "tab:eigenvalues1": (2, 2, 0),
          "tab:eigenvalues3": (3, 9, 0), "tab:eigenvalues2": (4, 2, 3)}
ALPHAS = ["0.01", "0.1", "0.5", "1", "1.5", "2"]

PREFIXED = re.compile(r"\$\{\\raisebox\{0\.2em\}\{\$\{\}_\{([0-9.]+)\}\$\}?\}?"
                      r"(?:\^\{([0-9.]+)\}_\{([0-9.]+)\}|_\{?([0-9.]+)\}?\^\{?([0-9.]+)\}?)\}?\$")
PLAIN = re.compile(r"\$\{\}\^\{([^}]*)\}_\{(?:\\phantom\{0\})?([0-9.]+)\}\$")


def cell(text):
    text = text.strip()
    m = PREFIXED.fullmatch(text)
    if m:
        p, u, l, l2, u2 = m.groups()
        return (p + (u or u2), p + (l or l2))
    m = PLAIN.fullmatch(text)
    if m:
        u, l = m.groups()
        return ("inf" if u == r"\infty" else u, l)
    raise ValueError(f"unrecognised cell: {text}")


def main(src, dst):
    text = open(src, encoding="utf-8").read()
    rows = []
    for block in re.findall(r"\\begin\{table\}.*?\\end\{table\}", text, re.S):
        label = re.search(r"\\label\{([^}]*)\}", block)
        if not label or label.group(1) not in TABLES:
            continue
        table, d, n = TABLES[label.group(1)]
        body = block.split(r"\hline", 1)[1].split(r"\end{tabular}", 1)[0]
        for line in body.split(r"\\"):
            line = line.strip()
            m = re.match(r"\$N = (\d+)\$\s*&(.*)", line, re.S)
            if not m:
                continue
            cells = m.group(2).split("&")
            assert len(cells) == len(ALPHAS), line
            for a, c in zip(ALPHAS, cells):
                upper, lower = cell(c)
                rows.append([table, d, n, int(m.group(1)), a, lower, upper])
    rows.sort(key=lambda r: (r[0], r[3], float(r[4])))
    assert len(rows) == 4 * 8 * 6, len(rows)
    with open(dst, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["table", "d", "n", "N", "alpha", "lower", "upper"])
        w.writerows(rows)


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
