"""Command-line front door.

Subcommands: parse, eval, check, lattice, gen.  Exit status is 0 when all
requested checks pass, 1 on input or usage errors, 2 when a lattice
closure exceeds its cap.  Reports are deterministic for fixed inputs and
seed; machine-readable output carries no timestamps.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .bridge import (
    QuantumModel,
    build_model,
    check_equiv_coincidence,
    check_q_trichotomy,
    check_qmt,
    check_quantum_equivalences,
    load_spec,
    lt_quotient_check,
    q_truth,
    reduce_qwff,
    states_separate,
)
from .errors import (
    ClosureOverflow,
    MissingTheta,
    NotTestable,
    QLogicError,
)
from .formulas import (
    And,
    Formula,
    Not,
    Or,
    Pred,
    QAnd,
    QImp,
    QNot,
    QOr,
    classify,
    has_quantum,
    parse,
    render,
)
from .generate import classical_model_bytes, qm_spec_bytes
from .lattice import (
    demorgan_violations,
    find_distributivity_failure,
    ortho_involution_violations,
    orthomodularity_witness,
)
from .models import (
    Model,
    SignatureSpace,
    boolean_law_violations,
    check_cms,
    check_cmt,
    eval_open,
    load_model,
    quotient_boolean,
    truth_collapse_violations,
)
from .propositions import check_connective_relations

MAX_SEED = 2**64 - 1


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 on usage errors; 2 is reserved for caps
        raise _UsageError(message)


@dataclass
class RunConfig:
    command: str
    model: str | None = None
    qm_spec: str | None = None
    formula: str | None = None
    depth: int = 3
    seed: int = 0
    fmt: str = "text"
    cap: int = 512
    out: str | None = None
    kind: str = "classical"
    gen_states: int = 2
    gen_predicates: int = 2
    gen_universe: int = 3
    gen_dim: int = 2
    gen_properties: int = 2


def _build_parser() -> _Parser:
    parser = _Parser(prog="qlogic", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, model=True, formula=False):
        if model:
            p.add_argument("--model", help="finite model file (JSON)")
            p.add_argument("--qm-spec", dest="qm_spec", help="Hilbert spec file (JSON)")
        if formula:
            p.add_argument("--formula", help="formula text")
        p.add_argument("--depth", type=int, default=3, help="enumeration depth cap")
        p.add_argument("--seed", type=int, default=0, help="generator seed (64-bit unsigned)")
        p.add_argument(
            "--format", dest="fmt", choices=("text", "json", "dot"), default="text"
        )
        p.add_argument("--cap", type=int, default=512, help="closure element cap")

    p = sub.add_parser("parse", help="parse a formula and print its canonical form")
    add_common(p, formula=True)

    p = sub.add_parser("eval", help="evaluate a formula over every state and object")
    add_common(p, formula=True)

    p = sub.add_parser("check", help="run every applicable conformance suite")
    add_common(p)

    p = sub.add_parser("lattice", help="export the proposition poset or subspace lattice")
    add_common(p)
    p.add_argument("--out", help="write the artifact here instead of stdout")

    p = sub.add_parser("gen", help="emit a seeded random model or spec file")
    add_common(p, model=False)
    p.add_argument("--kind", choices=("classical", "qm"), default="classical")
    p.add_argument("--states", dest="gen_states", type=int, default=2)
    p.add_argument("--predicates", dest="gen_predicates", type=int, default=2)
    p.add_argument("--universe", dest="gen_universe", type=int, default=3)
    p.add_argument("--dim", dest="gen_dim", type=int, default=2)
    p.add_argument("--properties", dest="gen_properties", type=int, default=2)
    p.add_argument("--out", help="write the file here instead of stdout")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command)
    for name in vars(cfg):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    if not 0 <= cfg.seed <= MAX_SEED:
        raise _UsageError("seed must fit in 64 unsigned bits")
    return cfg


# -- shared helpers ----------------------------------------------------------


def _load_input(cfg: RunConfig) -> tuple[Model, QuantumModel | None]:
    if cfg.model and cfg.qm_spec:
        raise _UsageError("give either --model or --qm-spec, not both")
    if cfg.model:
        return load_model(cfg.model), None
    if cfg.qm_spec:
        qm = build_model(load_spec(cfg.qm_spec))
        return qm.model, qm
    raise _UsageError("an input file is required (--model or --qm-spec)")


def _ast_dict(f: Formula) -> dict:
    if isinstance(f, Pred):
        return {"node": "pred", "name": f.name}
    if isinstance(f, (Not, QNot)):
        kind = "not" if isinstance(f, Not) else "qnot"
        return {"node": kind, "child": _ast_dict(f.child)}
    kind = {And: "and", Or: "or", QAnd: "qand", QOr: "qor", QImp: "qimp"}[type(f)]
    return {"node": kind, "left": _ast_dict(f.left), "right": _ast_dict(f.right)}


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


# -- commands -----------------------------------------------------------------


def cmd_parse(cfg: RunConfig) -> int:
    if not cfg.formula:
        raise _UsageError("--formula is required")
    f = parse(cfg.formula)
    tag = None
    if cfg.model or cfg.qm_spec:
        model, _ = _load_input(cfg)
        tag = classify(f, model.property_names()).value
    if cfg.fmt == "json":
        payload = {"render": render(f), "ast": _ast_dict(f)}
        if tag:
            payload["classification"] = tag
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(render(f))
        if tag:
            print(f"classification: {tag}")
    return 0


def cmd_eval(cfg: RunConfig) -> int:
    if not cfg.formula:
        raise _UsageError("--formula is required")
    model, qm = _load_input(cfg)
    f = parse(cfg.formula)
    quantum = has_quantum(f)
    if quantum and qm is None:
        raise MissingTheta("quantum connectives need a Hilbert-backed model (--qm-spec)")

    reduced: str | None = None
    if qm is not None:
        try:
            reduced = reduce_qwff(qm, f)
        except NotTestable:
            if quantum:
                raise
    rows = []
    for state in model.states:
        n = model.universe_sizes[state]
        if reduced is not None:
            values = [eval_open(model, Pred(reduced), state, u) for u in range(n)]
        else:
            values = [eval_open(model, f, state, u) for u in range(n)]
        universal = all(values)
        verdict = q_truth(qm, f, state) if (qm is not None and reduced is not None) else None
        rows.append((state, n, values, universal, verdict))

    if cfg.fmt == "json":
        payload = {
            "formula": render(f),
            "reduced_predicate": reduced,
            "states": [
                {
                    "name": state,
                    "universe": n,
                    "objects": values,
                    "universal": universal,
                    "in_proposition": universal,
                    **({"q_truth": verdict} if verdict is not None else {}),
                }
                for state, n, values, universal, verdict in rows
            ],
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(f"formula: {render(f)}")
        if reduced is not None:
            print(f"reduced predicate: {reduced}")
        for state, n, values, universal, verdict in rows:
            objs = ",".join("t" if v else "f" for v in values)
            line = (
                f"state {state} (n={n}): objects {objs} | "
                f"universally true: {'yes' if universal else 'no'} | "
                f"in proposition: {'yes' if universal else 'no'}"
            )
            if verdict is not None:
                line += f" | {verdict}"
            print(line)
    return 0


@dataclass
class SuiteResult:
    suite: str
    applicable: bool = True
    checked: int = 0
    violations: int = 0
    witnesses: list[str] | None = None
    info: dict | None = None

    def as_dict(self) -> dict:
        out = {
            "suite": self.suite,
            "applicable": self.applicable,
            "checked": self.checked,
            "violations": self.violations,
        }
        if self.witnesses:
            out["witnesses"] = self.witnesses[:5]
        if self.info:
            out["info"] = self.info
        return out

    def text(self) -> str:
        if not self.applicable:
            return f"suite {self.suite}: not applicable"
        status = "ok" if not self.violations else f"{self.violations} violation(s)"
        line = f"suite {self.suite}: {status} (checked {self.checked})"
        if self.info:
            extras = ", ".join(f"{k}={v}" for k, v in sorted(self.info.items()))
            line += f" [{extras}]"
        if self.witnesses:
            line += f" witnesses: {'; '.join(self.witnesses[:3])}"
        return line


def _classical_suites(
    model: Model, depth: int, generators: tuple[str, ...] | None = None
) -> list[SuiteResult]:
    """Classical conformance suites; ``generators`` bounds the formula
    alphabet (the user-named properties for Hilbert-backed inputs, whose
    full closure table would make the sweeps combinatorially infeasible)."""
    suites = []
    rel_depth = min(depth, 3)
    rel = check_connective_relations(model, rel_depth, predicates=generators)
    for entry in rel.entries:
        suites.append(
            SuiteResult(
                suite=f"connective-relation-{entry.relation}",
                checked=entry.checked,
                violations=len(entry.violations),
                witnesses=entry.violations[:5],
                info={"strict": entry.strict},
            )
        )
    algebra = quotient_boolean(model, predicates=generators, max_depth=min(depth, 4))
    laws = boolean_law_violations(algebra)
    suites.append(
        SuiteResult(
            suite="boolean-quotient",
            checked=len(algebra.elements),
            violations=len(laws),
            witnesses=laws[:5],
            info={"elements": len(algebra.elements)},
        )
    )
    cms = check_cms(model)
    suites.append(SuiteResult(suite="cm-full-or-empty", checked=len(model.predicates), info={"holds": cms}))
    cmt = check_cmt(model, min(depth, 4), predicates=generators)
    suites.append(
        SuiteResult(
            suite="cm-testability",
            checked=cmt.checked_classes,
            info={"holds": cmt.ok, **({"witness": render(cmt.witness)} if cmt.witness else {})},
        )
    )
    if cms:
        collapse = truth_collapse_violations(model, min(depth, 4), predicates=generators)
        suites.append(
            SuiteResult(
                suite="truth-certainty-collapse",
                checked=cmt.checked_classes,
                violations=len(collapse),
                witnesses=collapse[:5],
            )
        )
    else:
        suites.append(SuiteResult(suite="truth-certainty-collapse", applicable=False))
    return suites


def _quantum_suites(qm: QuantumModel, depth: int) -> list[SuiteResult]:
    suites = []
    lat = qm.lattice
    inv = ortho_involution_violations(lat)
    suites.append(
        SuiteResult(suite="ortho-involution", checked=len(lat), violations=len(inv))
    )
    dm = demorgan_violations(lat)
    suites.append(
        SuiteResult(suite="table-demorgan", checked=len(lat) ** 2, violations=len(dm))
    )
    om = orthomodularity_witness(lat)
    suites.append(
        SuiteResult(
            suite="orthomodularity",
            checked=len(lat) ** 2,
            violations=0 if om is None else 1,
            witnesses=None if om is None else [repr(om[0]), repr(om[1])],
        )
    )
    dist = find_distributivity_failure(lat)
    suites.append(
        SuiteResult(
            suite="distributivity-witness",
            checked=len(lat) ** 3,
            info={
                "expected-nondistributive": dist is not None,
                **(
                    {"witness": " / ".join(repr(s) for s in dist)}
                    if dist is not None
                    else {}
                ),
            },
        )
    )
    qmt = check_qmt(qm)
    suites.append(
        SuiteResult(
            suite="proposition-theta-agreement",
            checked=qmt.checked,
            violations=len(qmt.violations),
            witnesses=qmt.violations[:5],
        )
    )
    rel_depth = min(depth, 3)
    equiv = check_equiv_coincidence(qm, rel_depth)
    suites.append(
        SuiteResult(
            suite="equivalence-coincidence",
            checked=equiv.checked_pairs,
            violations=len(equiv.violations),
            witnesses=equiv.violations[:5],
        )
    )
    qe = check_quantum_equivalences(qm, rel_depth)
    for entry in qe.entries():
        suites.append(
            SuiteResult(
                suite=entry.relation,
                checked=entry.checked,
                violations=len(entry.violations),
                witnesses=entry.violations[:5],
                info={"strict": entry.strict} if entry.strict else None,
            )
        )
    suites.append(
        SuiteResult(
            suite="conjunction-signature-gap",
            checked=qe.conjunction_propositions.checked,
            info={
                "witnesses_found": len(qe.signature_gap_witnesses),
                **(
                    {"example": qe.signature_gap_witnesses[0]}
                    if qe.signature_gap_witnesses
                    else {}
                ),
            },
        )
    )
    tri = check_q_trichotomy(qm, min(depth, 2))
    suites.append(
        SuiteResult(
            suite="q-truth-trichotomy",
            checked=tri.checked,
            violations=len(tri.violations),
            witnesses=tri.violations[:5],
        )
    )
    lt = lt_quotient_check(qm)
    suites.append(
        SuiteResult(
            suite="qwff-quotient-isomorphism",
            checked=len(lat),
            violations=0 if lt.ok else 1,
            witnesses=lt.detail[:5] if not lt.ok else None,
            info={"status": lt.status},
        )
    )
    suites.append(
        SuiteResult(
            suite="state-separation",
            checked=len(lat),
            info={"separating": states_separate(qm), "preorder-coincides": qe.preorder_coincides},
        )
    )
    return suites


def cmd_check(cfg: RunConfig) -> int:
    model, qm = _load_input(cfg)
    generators = None
    if qm is not None:
        generators = tuple(name for name, _ in qm.spec.properties)
    suites = _classical_suites(model, cfg.depth, generators)
    if qm is not None:
        suites.extend(_quantum_suites(qm, cfg.depth))
    total = sum(s.violations for s in suites)
    if cfg.fmt == "json":
        payload = {
            "input": cfg.model or cfg.qm_spec,
            "kind": "qm-spec" if qm is not None else "model",
            "depth": cfg.depth,
            "suites": [s.as_dict() for s in suites],
            "violations": total,
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for s in suites:
            print(s.text())
        print(f"total violations: {total}")
    return 0 if total == 0 else 1


def _lattice_nodes_edges(cfg: RunConfig, model: Model, qm: QuantumModel | None):
    if qm is not None:
        lat = qm.lattice
        nodes = []
        for i, name in enumerate(qm.predicate_names):
            theta = ",".join(sorted(qm.theta[name]))
            nodes.append(
                {
                    "id": i,
                    "label": f"{name} dim={lat.elements[i].dim} {{{theta}}}",
                    "predicates": [name],
                    "states": sorted(qm.theta[name]),
                }
            )
        edges = []
        n = len(lat)
        for i in range(n):
            for j in range(n):
                if i == j or not lat.leq(i, j):
                    continue
                if any(k not in (i, j) and lat.leq(i, k) and lat.leq(k, j) for k in range(n)):
                    continue
                edges.append((i, j))
        return nodes, edges
    space = SignatureSpace(model)
    classes = space.closed_classes(model.predicate_names(), max_elements=4096)
    props: list[frozenset[str]] = []
    for mask in classes:
        prop = space.proposition(mask)
        if prop not in props:
            props.append(prop)
    props.sort(key=lambda s: (len(s), sorted(s)))
    nodes = []
    for i, prop in enumerate(props):
        names = [
            p.name
            for p in model.predicates
            if space.proposition(space.pred_masks[p.name]) == prop
        ]
        literal = "{" + ",".join(sorted(prop)) + "}"
        label = literal if not names else f"{literal} {'/'.join(names)}"
        nodes.append({"id": i, "label": label, "predicates": names, "states": sorted(prop)})
    edges = []
    for i, a in enumerate(props):
        for j, b in enumerate(props):
            if i == j or not a < b:
                continue
            if any(a < c < b for c in props):
                continue
            edges.append((i, j))
    return nodes, edges


def cmd_lattice(cfg: RunConfig) -> int:
    if cfg.depth > 4:
        from .errors import DepthLimitExceeded

        raise DepthLimitExceeded(f"depth {cfg.depth} exceeds cap 4")
    model, qm = _load_input(cfg)
    nodes, edges = _lattice_nodes_edges(cfg, model, qm)
    if cfg.fmt == "json":
        _emit(cfg, json.dumps({"nodes": nodes, "edges": edges}, indent=2, sort_keys=True))
    elif cfg.fmt == "dot":
        lines = ["digraph lattice {", "  rankdir=BT;"]
        for node in nodes:
            label = node["label"].replace('"', "'")
            lines.append(f'  n{node["id"]} [label="{label}"];')
        for i, j in edges:
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        _emit(cfg, "\n".join(lines))
    else:
        lines = [f"nodes: {len(nodes)}"]
        lines += [f"  [{node['id']}] {node['label']}" for node in nodes]
        lines.append(f"cover edges: {len(edges)}")
        lines += [f"  {i} -> {j}" for i, j in edges]
        _emit(cfg, "\n".join(lines))
    return 0


def cmd_gen(cfg: RunConfig) -> int:
    if cfg.kind == "classical":
        data = classical_model_bytes(
            cfg.seed, cfg.gen_states, cfg.gen_predicates, cfg.gen_universe
        )
    else:
        data = qm_spec_bytes(
            cfg.seed, cfg.gen_dim, cfg.gen_properties, cfg.gen_universe, cfg.cap
        )
    if cfg.out:
        with open(cfg.out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.write(data.decode("utf-8"))
    return 0


_COMMANDS = {
    "parse": cmd_parse,
    "eval": cmd_eval,
    "check": cmd_check,
    "lattice": cmd_lattice,
    "gen": cmd_gen,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _config_from_args(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    try:
        return _COMMANDS[cfg.command](cfg)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except ClosureOverflow as exc:
        print(f"closure overflow: {exc}", file=sys.stderr)
        for gen in exc.generators:
            print(f"  generator: {gen!r}", file=sys.stderr)
        return 2
    except QLogicError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
