#!/usr/bin/env python3
"""Writes data/modules/*.module from the hand-entered tables below.

Regenerate with:  python3 data/transcribe.py
The generated files are committed; edit this script, not the outputs.
"""

import math
import os
from collections import OrderedDict

HERE = os.path.dirname(os.path.abspath(__file__))


def tower_label(j, base):
    if j == 0:
        return base
    b = "B" if j == 1 else f"B^{j}"
    return b if base == "1" else f"{b}*{base}"


class Module:
    def __init__(self, name, prime, lo, hi, stability):
        self.name, self.prime, self.lo, self.hi, self.stability = name, prime, lo, hi, stability
        self.gens = []  # (label, degree, exp or None)
        self.ops = OrderedDict()
        self.actions = {}  # op -> {source label: [(target label, coeff)]}
        self.assumed = {}
        self.period = None

    def operator(self, name, shift):
        self.ops[name] = shift
        self.actions.setdefault(name, {})
        self.assumed.setdefault(name, [])

    def gen(self, label, degree, exp=None):
        assert all(g[0] != label for g in self.gens), label
        if self.lo <= degree <= self.hi:
            self.gens.append((label, degree, exp))
            return True
        return False

    def act(self, op, src, tgt, coeff=1):
        self.actions[op].setdefault(src, []).append((tgt, coeff))

    def tower(self, base, degree, exp=None):
        j = 0
        while self.gen(tower_label(j, base), degree + 8 * j, exp):
            if degree + 8 * (j + 1) <= self.hi:
                self.act("B", tower_label(j, base), tower_label(j + 1, base))
            j += 1

    def degree_of(self, label):
        return next(g[1] for g in self.gens if g[0] == label)

    def write(self, path, header):
        gens = sorted(self.gens, key=lambda g: g[1])  # stable: keeps insertion order per degree
        by_degree = {}
        for g in gens:
            by_degree.setdefault(g[1], []).append(g[0])
        out = [f"# {line}" if line else "#" for line in header]
        out += ["", f"module {self.name}", f"prime {self.prime}", f"window {self.lo} {self.hi}",
                f"stability {self.stability}"]
        for name in sorted(self.ops):
            out.append(f"operator {name} {self.ops[name]}")
        if self.period:
            out.append(f"period {self.period[0]} {self.period[1]}")
        out.append("")
        for label, degree, exp in gens:
            out.append(f"gen {label} {degree} {'inf' if exp is None else exp}")
        for name in sorted(self.ops):
            shift = self.ops[name]
            blocks = []
            for n in sorted(by_degree):
                src = by_degree[n]
                tgt = by_degree.get(n + shift, [])
                if not tgt:
                    continue
                rows = [[0] * len(src) for _ in tgt]
                nonzero = False
                for c, s in enumerate(src):
                    for t, coeff in self.actions[name].get(s, []):
                        rows[tgt.index(t)][c] += coeff
                        nonzero = True
                if nonzero:
                    blocks.append(f"action {name} {n}")
                    blocks += [" ".join(str(x) for x in row) for row in rows]
            if blocks:
                out.append("")
                out += blocks
        extra = [f"assumed {name} {label}" for name in sorted(self.ops) for label in self.assumed[name]]
        if extra:
            out.append("")
            out += extra
        with open(path, "w") as f:
            f.write("\n".join(out) + "\n")
        # every recorded action must land on a generator
        for name, table in self.actions.items():
            for s, targets in table.items():
                for t, _ in targets:
                    assert self.degree_of(t) == self.degree_of(s) + self.ops[name], (s, t)


def ko():
    m = Module("ko-p2", 2, 0, 28, 12)
    m.operator("B", 8)
    m.operator("eta", 1)
    for base, d, e in [("1", 0, None), ("eta", 1, 1), ("eta^2", 2, 1), ("A", 4, None)]:
        m.tower(base, d, e)
    for j in range(4):
        if 8 * j + 2 <= m.hi:
            m.act("eta", tower_label(j, "1"), tower_label(j, "eta"))
            m.act("eta", tower_label(j, "eta"), tower_label(j, "eta^2"))
    return m


def d(k):
    return 8 // math.gcd(k, 8)


# ko[k] eta-families: (label, degree)
ETA_FAMILIES = {
    0: [("eta", 1), ("eta^2", 2)],
    1: [("eta_1", 25), ("eta*eta_1", 26)],
    2: [("eta*B_2", 57), ("eta_1^2", 50)],
    3: [("eta*B_3", 81), ("eta^2*B_3", 82)],
    4: [("eta_4", 97), ("eta*eta_4", 98)],
    5: [("eta*B_5", 129), ("eta_1*eta_4", 122)],
    6: [("eta*B_6", 153), ("eta^2*B_6", 154)],
    7: [("eta*B_7", 177), ("eta^2*B_7", 178)],
}

# B-power torsion at p = 2: degree -> [(label, exponent)]
TABLE_P2 = [
    (3, [("nu", 3)]), (6, [("nu^2", 1)]), (8, [("eps", 1)]), (9, [("eta*eps", 1)]),
    (14, [("kappa", 1)]), (15, [("eta*kappa", 1)]), (17, [("nu*kappa", 1)]),
    (20, [("kappabar", 3)]), (21, [("eta*kappabar", 1)]), (22, [("eta^2*kappabar", 1)]),
    (27, [("nu_1", 2)]), (28, [("eta*nu_1", 1)]), (32, [("eps_1", 1)]), (33, [("eta*eps_1", 1)]),
    (34, [("kappa*kappabar", 1)]), (35, [("eta*kappa*kappabar", 1)]), (39, [("eta_1*kappa", 1)]),
    (40, [("kappabar^2", 2)]), (41, [("eta*kappabar^2", 1)]), (42, [("eta^2*kappabar^2", 1)]),
    (45, [("eta_1*kappabar", 1)]), (46, [("eta*eta_1*kappabar", 1)]),
    (51, [("nu_2", 3)]), (52, [("eta*nu_2", 1)]), (53, [("eta^2*nu_2", 1)]), (54, [("nu*nu_2", 2)]),
    (57, [("nu^2*nu_2", 1)]), (59, [("B*nu_2", 1)]), (60, [("kappabar^3", 2)]),
    (65, [("eta_1*kappabar^2", 1), ("nu_2*kappa", 1)]), (66, [("eta*nu_2*kappa", 1)]),
    (68, [("nu*nu_2*kappa", 1)]), (70, [("eta_1^2*kappabar", 1)]),
    (75, [("eta_1^3", 1)]), (80, [("kappabar^4", 1)]), (85, [("eta_1*kappabar^3", 1)]),
    (90, [("eta_1^2*kappabar^2", 1)]),
    (99, [("nu_4", 3)]), (100, [("eta*nu_4", 1)]), (102, [("nu*nu_4", 1)]), (104, [("eps_4", 1)]),
    (105, [("eta*eps_4", 1), ("eta_1*kappabar^4", 1)]), (110, [("kappa_4", 2)]), (111, [("eta*kappa_4", 1)]),
    (113, [("nu*kappa_4", 1)]), (116, [("kappabar*D_4", 2)]), (117, [("eta_4*kappabar", 1)]),
    (118, [("eta*eta_4*kappabar", 1)]),
    (123, [("nu_5", 2)]), (124, [("eta*nu_5", 1)]), (125, [("eta^2*nu_5", 1)]), (128, [("eps_5", 1)]),
    (129, [("eta*eps_5", 1)]), (130, [("kappa_4*kappabar", 2)]), (131, [("eta*kappa_4*kappabar", 1)]),
    (135, [("eta_1*kappa_4", 1)]), (136, [("eta*eta_1*kappa_4", 1)]), (137, [("nu_5*kappa", 1)]),
    (138, [("eta*nu_5*kappa", 1)]), (142, [("eps_5*kappa", 1)]),
    (147, [("nu_6", 3)]), (148, [("eta*nu_6", 1)]), (149, [("eta^2*nu_6", 1)]), (150, [("nu*nu_6", 3)]),
    (153, [("nu^2*nu_6", 1)]), (155, [("B*nu_6", 1)]), (156, [("B*eta*nu_6", 1)]),
    (161, [("nu_6*kappa", 1)]), (162, [("eta*nu_6*kappa", 1)]), (164, [("nu*nu_6*kappa", 1)]),
]

# B-action on the torsion table: (source, target, coefficient); all else is zero
B_ACTIONS_P2 = [
    ("kappa", "eta^2*kappabar", 1), ("kappabar", "eta*nu_1", 1), ("nu_1", "eta*kappa*kappabar", 1),
    ("kappa*kappabar", "eta^2*kappabar^2", 1), ("eta_1*kappabar", "eta^2*nu_2", 1), ("nu_2", "B*nu_2", 1),
    ("kappa_4", "eta*eta_4*kappabar", 1), ("eta_4*kappabar", "eta^2*nu_5", 1),
    ("nu_5", "eta*kappa_4*kappabar", 1), ("eps_5", "eta*eta_1*kappa_4", 1),
    ("kappa_4*kappabar", "eta*nu_5*kappa", 1), ("nu_6", "B*nu_6", 1), ("eta*nu_6", "B*eta*nu_6", 1),
    ("eps_1", "kappabar^2", 2), ("eta*nu_2", "kappabar^3", 2), ("eps_5*kappa", "nu*nu_6", 4),
]

TABLE_P3 = [
    (3, [("nu", 1)]), (10, [("beta", 1)]), (13, [("nu*beta", 1)]), (20, [("beta^2", 1)]),
    (27, [("nu_1", 1)]), (30, [("beta^3", 1)]), (37, [("nu_1*beta", 1)]), (40, [("beta^4", 1)]),
]


def tmf_p2():
    m = Module("tmf-N-p2", 2, 0, 200, 181)
    m.operator("B", 8)
    m.operator("nu", 3)
    m.period = ("M", 192)
    for k in range(8):
        if k == 0:
            m.tower("1", 0)
            m.tower("C", 12)
        else:
            m.gen(f"D_{k}", 24 * k)
            m.tower(f"B_{k}", 24 * k + 8)
            m.tower(f"C_{k}", 24 * k + 12)
            m.act("B", f"D_{k}", f"B_{k}", d(k))
        for label, deg in ETA_FAMILIES[k]:
            m.tower(label, deg, 1)
    acted = {s for s, _, _ in B_ACTIONS_P2}
    for deg, cells in TABLE_P2:
        for label, e in cells:
            m.gen(label, deg, e)
    for s, t, c in B_ACTIONS_P2:
        m.act("B", s, t, c)
    for deg, cells in TABLE_P2:
        for label, _ in cells:
            if label not in acted:
                m.assumed["B"].append(label)
    m.act("nu", "nu*nu_4", "eta*eps_4")
    m.act("nu", "nu*nu_4", "eta_1*kappabar^4")
    return m


def tmf_p3():
    m = Module("tmf-N-p3", 3, 0, 80, 61)
    m.operator("B", 8)
    m.period = ("H", 72)
    m.tower("1", 0)
    m.tower("C", 12)
    for k in (1, 2):
        m.gen(f"D_{k}", 24 * k)
        m.tower(f"B_{k}", 24 * k + 8)
        m.tower(f"C_{k}", 24 * k + 12)
        m.act("B", f"D_{k}", f"B_{k}", 3)
    for deg, cells in TABLE_P3:
        for label, e in cells:
            m.gen(label, deg, e)
    return m


def write_table(path, header, rows):
    def group(cells):
        if len(cells) == 1:
            return f"Z/{2 ** cells[0][1] if prime == 2 else 3 ** cells[0][1]}"
        exps = {e for _, e in cells}
        assert exps == {1}
        return f"(Z/{prime})^{len(cells)}"
    lines = [f"# {h}" for h in header] + [""]
    for deg, cells in rows:
        lines.append(f"{deg:>4} | {group(cells)} | {', '.join(label for label, _ in cells)}")
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")


def main():
    global prime
    golden = os.path.join(HERE, "golden")
    os.makedirs(golden, exist_ok=True)
    prime = 2
    write_table(os.path.join(golden, "tmf-N-p2.gammaB.table"), [
        "B-power torsion of N_* at p = 2, degree | group | generators.",
        "Generated by transcribe.py.",
    ], TABLE_P2)
    prime = 3
    write_table(os.path.join(golden, "tmf-N-p3.gammaB.table"), [
        "B-power torsion of N_* at p = 3, degree | group | generators.",
        "Generated by transcribe.py.",
    ], TABLE_P3)

    out = os.path.join(HERE, "modules")
    os.makedirs(out, exist_ok=True)
    ko().write(os.path.join(out, "ko-p2.module"), [
        "pi_*(ko) at p = 2: Z_2[eta, A, B]/(2 eta, eta^3, eta A, A^2 = 4B).",
        "Additive generators per degree; B and eta act as recorded.",
        "Generated by transcribe.py.",
    ])
    rows = len(TABLE_P2)
    tmf_p2().write(os.path.join(out, "tmf-N-p2.module"), [
        "Basic block N_* of pi_*(tmf) at p = 2: B-power torsion table plus ko[0..7].",
        f"Torsion table: {rows} degrees. Unlisted B-products on torsion classes are",
        "zero by default and marked 'assumed'. The nu block records one relation only.",
        "Generated by transcribe.py.",
    ])
    tmf_p3().write(os.path.join(out, "tmf-N-p3.module"), [
        "Basic block N_* of pi_*(tmf) at p = 3: B-power torsion table plus ko[0..2].",
        "The torsion is annihilated by (3, B).",
        "Generated by transcribe.py.",
    ])


if __name__ == "__main__":
    main()
