#!/usr/bin/env python3
"""Writes the file-sharing game and its upload/download profile for given n1, n2."""

import argparse
import itertools
from pathlib import Path


def block(u, n):
    return f"((!{u})* ; {u} ; (!{u})*)^{n}"


def game(n1, n2):
    goals = [
        "<(u1 ; tt)*> d1",
        "<(tt ; u2)*> d2",
        f"[((!u1)* ; u1)^{n1}] d1",
        f"[((!u2)* ; u2)^{n2}] d2",
    ]
    goals += [f"!<{block('u1', n)}> d1" for n in range(n1)]
    goals += [f"!<{block('u2', n)}> d2" for n in range(n2)]
    manager = " && ".join(f"({g})" for g in goals)
    return "\n".join([
        f'game "file sharing n1={n1} n2={n2}"',
        'player 0 module "manager" controls d1, d2',
        "  free",
        'player 1 module "client1" controls u1',
        "  free",
        'player 2 module "client2" controls u2',
        "  free",
        f"goal 0 : {manager}",
        "goal 1 : <tt*> d2",
        "goal 2 : <tt*> d1",
        "",
    ])


def profile(n1, n2, lazy=False):
    lines = ["player 0"]
    states = [(a, b) for a in range(n1 + 1) for b in range(n2 + 1)]
    name = lambda a, b: f"c{a}_{b}"
    lines.append("states: " + ", ".join(name(a, b) for a, b in states))
    lines.append(f"initial: {name(0, 0)}")
    for a, b in states:
        out = (["d1"] if a == n1 else []) + (["d2"] if b == n2 and not lazy else [])
        lines.append(f"output {name(a, b)}: {', '.join(out)}")
    for a, b in states:
        for bits in itertools.product([0, 1], repeat=4):
            d1, d2, u1, u2 = bits
            if not (u1 or u2):
                continue
            na, nb = min(n1, a + u1), min(n2, b + u2)
            if (na, nb) == (a, b):
                continue
            val = ", ".join(v for v, on in zip(["d1", "d2", "u1", "u2"], bits) if on)
            lines.append(f"on {name(a, b)} {{{val}}} -> {name(na, nb)}")
    lines += [
        "",
        "player 1",
        "states: up, idle",
        "initial: up",
        "output up: u1",
        "output idle:",
        "default up -> idle",
        "default idle -> up",
        "",
        "player 2",
        "states: idle, up",
        "initial: idle",
        "output idle:",
        "output up: u2",
        "default idle -> up",
        "default up -> idle",
        "",
    ]
    return "\n".join(lines)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n1", type=int, default=1)
    ap.add_argument("--n2", type=int, default=1)
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "fixtures")
    args = ap.parse_args()
    suffix = f"n{args.n1}" if args.n1 == args.n2 else f"n{args.n1}_{args.n2}"
    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / f"example1_{suffix}.game").write_text(game(args.n1, args.n2))
    (args.out / f"example2_{suffix}.profile").write_text(profile(args.n1, args.n2))
    (args.out / f"example2_{suffix}_lazy.profile").write_text(profile(args.n1, args.n2, lazy=True))


if __name__ == "__main__":
    main()
