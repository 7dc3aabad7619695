"""Command line interface: instance files in, CSV / SVG / text out.

Instance file format, one directive per line::

    # comment
    covariates X1 X2
    types 0 1
    prob <x-token per covariate> <y> <r|b> <mass>
    loss <0|1> <y> <value>
    agent <alpha_r> <alpha_b>        (optional)

Masses and values are decimals or ``a/b`` rationals.

Exit codes: 0 success, 2 parse error, 3 infeasibility or domain error.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .dist import GROUP_COLUMN, GROUPS, Instance, LossMatrix
from .errors import DomainError, FrontierError, InfeasibilityError, NormalizationError, ParseError
from .exclusion import uniform_worsening_report
from .frontier import classify, fa_frontier, feasible_set, special_points
from .generalized import (CRITERIA, FairnessFunctional, PhiTransform, criteria_loss, generalized_frontier,
                          phi_frontier)
from .geometry import Point2
from .input_design import (AgentWeights, construct_garbling, input_design_feasible, input_design_frontier,
                           no_info_payoff)
from .numeric import format_number
from .oracle import oracle_feasible
from .svg import emit_svg

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_DOMAIN = 3


# -- parsing ------------------------------------------------------------------

def _number(tok: str, line: int):
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a number: {tok!r}", line) from None


def parse_instance(text: str, mode: str = "exact"):
    """Parse an instance file into (Instance, LossMatrix, AgentWeights or None)."""
    names: Optional[tuple] = None
    types: Optional[list] = None
    masses: dict = {}
    losses: dict = {}
    agent = None
    last = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last = lineno
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "covariates":
            if names is not None:
                raise ParseError("repeated covariates line", lineno)
            if GROUP_COLUMN in rest:
                raise ParseError(f"covariate name {GROUP_COLUMN!r} is reserved for the group column", lineno)
            if len(set(rest)) != len(rest):
                raise ParseError("duplicate covariate names", lineno)
            names = tuple(rest)
        elif head == "types":
            if types is not None:
                raise ParseError("repeated types line", lineno)
            if not rest or len(set(rest)) != len(rest):
                raise ParseError("types must be a nonempty list of distinct labels", lineno)
            types = list(rest)
        elif head == "prob":
            if names is None:
                raise ParseError("prob line before covariates line", lineno)
            if len(rest) != len(names) + 3:
                raise ParseError(f"prob needs {len(names)} covariate tokens, a type, a group and a mass", lineno)
            x = tuple(rest[: len(names)])
            y, g, m = rest[len(names):]
            if g not in GROUPS:
                raise ParseError(f"group must be r or b, got {g!r}", lineno)
            if types is not None and y not in types:
                raise ParseError(f"unknown type {y!r}", lineno)
            if (x, y, g) in masses:
                raise ParseError(f"duplicate prob entry for {x} {y} {g}", lineno)
            q = _number(m, lineno)
            if q < 0:
                raise ParseError("negative mass", lineno)
            masses[(x, y, g)] = q
        elif head == "loss":
            if len(rest) != 3 or rest[0] not in ("0", "1"):
                raise ParseError("loss needs <0|1> <type> <value>", lineno)
            d, y = int(rest[0]), rest[1]
            if types is not None and y not in types:
                raise ParseError(f"unknown type {y!r}", lineno)
            if (d, y) in losses:
                raise ParseError(f"duplicate loss entry for d={d}, y={y}", lineno)
            losses[(d, y)] = _number(rest[2], lineno)
        elif head == "agent":
            if len(rest) != 2:
                raise ParseError("agent needs two weights", lineno)
            try:
                agent = AgentWeights(_number(rest[0], lineno), _number(rest[1], lineno))
            except DomainError as exc:
                raise ParseError(str(exc), lineno) from None
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)
    if names is None:
        raise ParseError("missing covariates line", last)
    if types is None:
        types = sorted({k[1] for k in masses})
    for y in types:
        for d in (0, 1):
            if (d, y) not in losses:
                raise ParseError(f"missing loss for d={d}, y={y}", last)
    exact = mode == "exact"
    try:
        inst = Instance(names, tuple(types), masses if exact else {k: float(v) for k, v in masses.items()},
                        "exact" if exact else "float")
    except NormalizationError as exc:
        raise ParseError(str(exc), last) from None
    loss = LossMatrix(losses).with_mode(exact)
    if agent is not None and not exact:
        agent = AgentWeights(float(agent.alpha_r), float(agent.alpha_b))
    return inst, loss, agent


def format_instance(instance: Instance, loss: LossMatrix, agent: Optional[AgentWeights] = None) -> str:
    lines = ["covariates " + " ".join(instance.covariate_names), "types " + " ".join(instance.type_labels)]
    for (x, y, g), m in instance.mass.items():
        lines.append(" ".join(["prob", *x, y, g, format_number(m)]))
    for (d, y), v in sorted(loss.values.items()):
        lines.append(f"loss {d} {y} {format_number(v)}")
    if agent is not None:
        lines.append(f"agent {format_number(agent.alpha_r)} {format_number(agent.alpha_b)}")
    return "\n".join(lines) + "\n"


# -- output helpers ---------------------------------------------------------------

def _csv(points) -> str:
    return "e_r,e_b\n" + "".join(f"{format_number(p[0])},{format_number(p[1])}\n" for p in points)


def _text(points) -> str:
    return "".join(f"{format_number(p[0])} {format_number(p[1])}\n" for p in points)


def _points_out(points, fmt: str, svg_args=None) -> str:
    if fmt == "csv":
        return _csv(points)
    if fmt == "svg":
        return emit_svg(*svg_args)
    return _text(points)


def _agent(args, file_agent) -> AgentWeights:
    if args.alpha_r is not None or args.alpha_b is not None:
        if args.alpha_r is None or args.alpha_b is None:
            raise DomainError("give both --alpha-r and --alpha-b")
        conv = Fraction if args.mode == "exact" else float
        return AgentWeights(conv(Fraction(args.alpha_r)), conv(Fraction(args.alpha_b)))
    if file_agent is None:
        raise DomainError("no agent weights: use --alpha-r/--alpha-b or an agent line")
    return file_agent


def _names(text: Optional[str]) -> list:
    return [n for n in (text or "").replace(",", " ").split() if n]


def _functional(spec: str, inst, loss):
    if spec == "baseline":
        return FairnessFunctional.baseline(inst, loss)
    if spec == "zero":
        return FairnessFunctional.zero(inst)
    if spec in CRITERIA:
        return FairnessFunctional.from_fairness_loss(inst, criteria_loss(spec, inst))
    raise DomainError(f"unknown fairness functional {spec!r}")


# -- commands -----------------------------------------------------------------------

def _cmd_feasible(args, inst, loss, agent) -> str:
    fs = feasible_set(inst, loss)
    if args.format == "svg":
        return emit_svg(fs.polygon, [fa_frontier(fs)], special_points(fs))
    return _points_out(fs.polygon.vertices, args.format)


def _cmd_frontier(args, inst, loss, agent) -> str:
    fs = feasible_set(inst, loss)
    fr = fa_frontier(fs)
    return _points_out(fr.points, args.format, (fs.polygon, [fr], special_points(fs)))


def _cmd_classify(args, inst, loss, agent) -> str:
    c = classify(special_points(feasible_set(inst, loss)))
    if args.format == "csv":
        return f"kind,strict_balance\n{c.kind.value},{str(c.strict_balance).lower()}\n"
    return f"{c.kind.value}\n" + ("strictly group-balanced\n" if c.strict_balance else "")


def _cmd_special(args, inst, loss, agent) -> str:
    fs = feasible_set(inst, loss)
    sp = special_points(fs)
    pts = [sp.r_point, sp.b_point, sp.f_point]
    if args.format == "text":
        return "".join(f"{n} {format_number(p[0])} {format_number(p[1])}\n" for n, p in zip("rbf", pts))
    return _points_out(pts, args.format, (fs.polygon, [fa_frontier(fs)], sp))


def _cmd_input_design(args, inst, loss, agent) -> str:
    ag = _agent(args, agent)
    fs = feasible_set(inst, loss)
    poly = input_design_feasible(fs, ag)
    fr = input_design_frontier(fs, ag)
    if args.format == "svg":
        return emit_svg(poly, [fr], None)
    if args.format == "csv":
        return _csv(fr.points)
    e0, _ = no_info_payoff(inst, loss, ag)
    return (f"no-information payoff {format_number(e0)}\nimplementable set\n" + _text(poly.vertices)
            + "frontier\n" + _text(fr.points))


def _cmd_garble(args, inst, loss, agent) -> str:
    ag = _agent(args, agent)
    conv = Fraction if args.mode == "exact" else float
    try:
        er, eb = (conv(Fraction(t)) for t in args.target.split(","))
    except ValueError:
        raise DomainError(f"bad --target {args.target!r}; expected er,eb") from None
    garbling, cert = construct_garbling(feasible_set(inst, loss), Point2(er, eb), ag)
    lines = [f"obedient {str(cert.obedient).lower()}",
             f"induced {format_number(cert.induced_errors[0])},{format_number(cert.induced_errors[1])}",
             f"agent_payoff {format_number(cert.agent_payoff)}",
             f"no_info_payoff {format_number(cert.no_info_payoff)}"]
    for t in garbling.signal_labels:
        lines.append(f"slack {t} {format_number(cert.per_signal_slack[t])}")
    lines.append("kernel x P(recommend 1)")
    for x, row in garbling.kernel.items():
        lines.append(f"{' '.join(x)} {format_number(row['1'])}")
    return "\n".join(lines) + "\n"


def _cmd_exclude(args, inst, loss, agent) -> str:
    ag = _agent(args, agent)
    rep = uniform_worsening_report(inst, loss, ag, _names(args.base), _names(args.extra), args.with_group)
    if args.format == "csv":
        rows = ["curve,e_r,e_b"]
        for name, fr in (("without", rep.frontier_without), ("with", rep.frontier_with)):
            rows += [f"{name},{format_number(p[0])},{format_number(p[1])}" for p in fr.points]
        return "\n".join(rows) + "\n"
    lines = [f"uniformly_worsens {str(rep.uniformly_worsens).lower()}",
             "frontier_without " + "; ".join(f"{format_number(p[0])},{format_number(p[1])}" for p in rep.frontier_without),
             "frontier_with " + "; ".join(f"{format_number(p[0])},{format_number(p[1])}" for p in rep.frontier_with)]
    if rep.witness:
        a, b = rep.witness
        lines.append(f"witness {format_number(a[0])},{format_number(a[1])} dominated by "
                     f"{format_number(b[0])},{format_number(b[1])}")
    if rep.shared_point is not None:
        p = rep.shared_point
        lines.append(f"shared_point {format_number(p[0])},{format_number(p[1])}")
    return "\n".join(lines) + "\n"


def _cmd_gen_frontier(args, inst, loss, agent) -> str:
    h = _functional(args.h, inst, loss)
    gf = generalized_frontier(inst, loss, h, args.grid)
    if args.format == "csv":
        rows = ["delta,r_e_r,r_e_b,b_e_r,b_e_b"]
        for d, r, b in zip(gf.delta_grid, gf.r_curve, gf.b_curve):
            rows.append(",".join(format_number(v) for v in (d, r[0], r[1], b[0], b[1])))
        return "\n".join(rows) + "\n"
    if args.format == "svg":
        return emit_svg(feasible_set(inst, loss).polygon, gf.region_polylines(), None)
    return (f"min_unfairness {format_number(gf.min_unfairness)}\nfairness_optimal_set\n"
            + _text(gf.fairness_optimal_set.points) + "pareto_boundary\n" + _text(gf.pareto_boundary.points))


def _cmd_phi_frontier(args, inst, loss, agent) -> str:
    fs = feasible_set(inst, loss)
    fr = phi_frontier(fs, PhiTransform.parse(args.phi))
    return _points_out(fr.points, args.format, (fs.polygon, [fr], None))


def _cmd_criteria_loss(args, inst, loss, agent) -> str:
    crit = criteria_loss(args.kind, inst)
    rows = ["d,y,g,value"] if args.format == "csv" else []
    sep = "," if args.format == "csv" else " "
    for d in (0, 1):
        for y in inst.type_labels:
            for g in GROUPS:
                rows.append(sep.join([str(d), y, g, format_number(crit.value(d, y, g))]))
    return "\n".join(rows) + "\n"


def _cmd_oracle_check(args, inst, loss, agent) -> str:
    fs = feasible_set(inst, loss)
    cloud, hull = oracle_feasible(inst, loss)
    ok = set(map(tuple, fs.polygon.vertices)) == set(map(tuple, hull))
    if not ok:
        args._failed = True
    return (f"deterministic_points {len(cloud)}\nhull_vertices {len(hull)}\n"
            f"polygon_vertices {len(fs.polygon.vertices)}\nmatch {str(ok).lower()}\n")


COMMANDS = {
    "feasible": _cmd_feasible,
    "frontier": _cmd_frontier,
    "classify": _cmd_classify,
    "special-points": _cmd_special,
    "input-design": _cmd_input_design,
    "garble": _cmd_garble,
    "exclude": _cmd_exclude,
    "gen-frontier": _cmd_gen_frontier,
    "phi-frontier": _cmd_phi_frontier,
    "criteria-loss": _cmd_criteria_loss,
    "oracle-check": _cmd_oracle_check,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("instance", help="instance file, or - for stdin")
    common.add_argument("--format", choices=("csv", "svg", "text"), default="text")
    common.add_argument("--mode", choices=("exact", "float"), default="exact")
    common.add_argument("-o", "--output", help="write to this file instead of stdout")
    agent = _Parser(add_help=False)
    agent.add_argument("--alpha-r")
    agent.add_argument("--alpha-b")

    p = _Parser(prog="fafrontier", description="Fairness-accuracy frontiers for binary decisions.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in ("feasible", "frontier", "classify", "special-points", "oracle-check"):
        sub.add_parser(name, parents=[common])
    sub.add_parser("input-design", parents=[common, agent])
    g = sub.add_parser("garble", parents=[common, agent])
    g.add_argument("--target", required=True, help="e_r,e_b")
    e = sub.add_parser("exclude", parents=[common, agent])
    e.add_argument("--base", default="", help="comma-separated covariates kept in both cases")
    e.add_argument("--extra", required=True, help="covariates being excluded; G denotes the group")
    e.add_argument("--with-group", action="store_true", help="add the group to the base covariates")
    gf = sub.add_parser("gen-frontier", parents=[common])
    gf.add_argument("--h", default="baseline", help="baseline, zero, or a criterion name")
    gf.add_argument("--grid", type=int, default=33)
    ph = sub.add_parser("phi-frontier", parents=[common])
    ph.add_argument("--phi", required=True, help="identity, log, sqrt or power:<p>")
    cl = sub.add_parser("criteria-loss", parents=[common])
    cl.add_argument("--kind", required=True, choices=CRITERIA)
    return p


def run_command(argv: Sequence[str], stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(list(argv))
        if args.instance == "-":
            text = sys.stdin.read()
        else:
            try:
                with open(args.instance, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise ParseError(f"cannot read {args.instance}: {exc.strerror}") from None
        inst, loss, agent = parse_instance(text, args.mode)
        args._failed = False
        out = COMMANDS[args.command](args, inst, loss, agent)
    except ParseError as exc:
        print(f"parse error: {exc}", file=stderr)
        return EXIT_PARSE
    except (DomainError, InfeasibilityError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_DOMAIN
    except FrontierError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_DOMAIN
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(out)
    else:
        stdout.write(out)
    return EXIT_FAIL if args._failed else EXIT_OK


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
