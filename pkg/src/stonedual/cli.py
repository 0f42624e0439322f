"""Command-line interface: ``stonedual classify|spec|audit|enumerate``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import audits
from .dot import space_dot
from .duality import describe_spectrum, spec_lattice
from .errors import BoundExceeded, StoneDualError, UnknownSuite, ValidationError
from .order import FiniteLattice, enumerate_distributive_lattices, enumerate_posets, enumerate_preorders
from .rings import FiniteCommRing, spec_ring
from .schema import as_space, load
from .symbolic import ChainTemplate, classify_template, diagram_region, explain_template
from .topology import MAX_ENUMERATED_POINTS, PredicateProfile, classify, enumerate_topologies, explain

SEEDED_SUITES = {"symbolic-oracle"}


def _flag(v: bool) -> str:
    return "true" if v else "false"


def format_profile(p: PredicateProfile, reasons: dict[str, str]) -> str:
    lines = []
    for name, value in p.as_dict().items():
        line = f"{name}: {_flag(value)}"
        if not value and name in reasons:
            line += f"  witness: {reasons[name]}"
        lines.append(line)
    lines.append(f"region: {diagram_region(p)}")
    return "\n".join(lines)


def cmd_classify(args) -> int:
    obj = load(args.file)
    if isinstance(obj, ChainTemplate):
        p = classify_template(obj)
        print(format_profile(p, explain_template(obj)))
        return 0
    if isinstance(obj, FiniteLattice):
        X = spec_lattice(obj).space
    elif isinstance(obj, FiniteCommRing):
        X = spec_ring(obj).space
    else:
        X = as_space(obj)
    p = classify(X, audit=True)
    print(format_profile(p, explain(X, p)))
    return 0


def cmd_spec(args) -> int:
    obj = load(args.file)
    if isinstance(obj, FiniteLattice):
        S = spec_lattice(obj)
    elif isinstance(obj, FiniteCommRing):
        S = spec_ring(obj)
    else:
        raise ValidationError("spec takes a lattice or a ring")
    print(describe_spectrum(S))
    dot = space_dot(S.space, "spec")
    if args.dot:
        Path(args.dot).write_text(dot, encoding="utf-8")
    print(dot, end="")
    return 0


def cmd_audit(args) -> int:
    if args.suite not in audits.SUITES:
        raise UnknownSuite(f"unknown suite {args.suite!r}; known: {', '.join(audits.SUITES)}")
    if args.suite in SEEDED_SUITES and args.seed is None:
        print(f"error: suite {args.suite} needs --seed", file=sys.stderr)
        return 2
    result = audits.run(
        args.suite,
        max_points=args.max_points,
        max_lattice=args.max_lattice,
        max_modulus=args.max_modulus,
        seed=args.seed,
        trials=args.trials,
    )
    print(result.report())
    return 0 if result.ok else 1


def _frequencies(spaces) -> list[str]:
    counts = dict.fromkeys(PredicateProfile.flag_names(), 0)
    for X in spaces:
        for k, v in classify(X).as_dict().items():
            counts[k] += v
    return [f"  {k}: {v}" for k, v in counts.items()]


ENUMERABLE = ("topologies", "t0-topologies", "preorders", "posets", "distributive-lattices")


def cmd_enumerate(args) -> int:
    kind, n = args.kind, args.n
    if n < 0:
        raise BoundExceeded("size must be non-negative")
    if kind in ("topologies", "t0-topologies"):
        if n > MAX_ENUMERATED_POINTS:
            raise BoundExceeded(f"topology enumeration limited to {MAX_ENUMERATED_POINTS} points")
        spaces = enumerate_topologies(n, t0_only=kind == "t0-topologies")
        print(f"{kind} on {n} points: {len(spaces)}")
        print("\n".join(_frequencies(spaces)))
    elif kind == "preorders":
        rows = list(enumerate_preorders(n))
        print(f"preorders on {n} elements: {len(rows)}")
        print(f"  antisymmetric: {sum(p.is_antisymmetric() for p in rows)}")
    elif kind == "posets":
        print(f"posets on {n} elements: {sum(1 for _ in enumerate_posets(n))}")
    elif kind == "distributive-lattices":
        found = enumerate_distributive_lattices(n)
        print(f"distributive lattices with at most {n} elements: {len(found)}")
        for k in range(1, n + 1):
            print(f"  size {k}: {sum(L.size == k for L in found)}")
    else:
        raise ValidationError(f"unknown kind {kind!r}; expected one of {', '.join(ENUMERABLE)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stonedual", description="Finite spectral spaces, lattices and rings.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="print the predicate profile of a space, template, lattice or ring")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("spec", help="print the prime spectrum of a lattice or ring")
    p.add_argument("file")
    p.add_argument("--dot", metavar="OUT", help="also write the Hasse diagram to this file")
    p.set_defaults(func=cmd_spec)

    p = sub.add_parser("audit", help="run an audit suite", description="suites: " + ", ".join(audits.SUITES))
    p.add_argument("suite")
    p.add_argument("--max-points", type=int)
    p.add_argument("--max-lattice", type=int)
    p.add_argument("--max-modulus", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("enumerate", help="count small structures", description="kinds: " + ", ".join(ENUMERABLE))
    p.add_argument("kind")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except StoneDualError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
