"""
Command layer shared by the console scripts.

Every command returns a CommandResult with an exit code and the report text; gapchain
errors are caught here, recorded in the report and turned into their exit code.
"""
import io
import os
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from gapchain import log
from gapchain.cnf import parse_dimacs, sat_bruteforce
from gapchain.config import PipelineConfig
from gapchain.exceptions import (
    BudgetExceeded,
    GapchainBaseException,
    ParseError,
    PreconditionError,
    VerificationFailed,
)
from gapchain.expander.expander_stage import load_clique_instance
from gapchain.gapchain_globals import EXIT_OK, SAT_VAR_LIMIT
from gapchain.graphs import ExplicitGroupedGraph, Vertex, parse_graph
from gapchain.ldt import (
    LdtParams,
    distance_to_degree,
    parse_table,
    reject_rate,
    soundness_floor,
)
from gapchain.oracles import (
    CliqueWitness,
    densest_grouped_subgraph,
    format_witness,
    max_grouped_biclique,
    max_grouped_clique,
    parse_witness,
)
from gapchain.pihchain import (
    ExplicitBiclique,
    parse_disperser,
    verify_disperser,
)
from gapchain.pihchain.disperser import CAPPED
from gapchain.pihchain.pihchain_stage import load_biclique
from gapchain.report_log import ReportLog
from gapchain.rmcsp import (
    RmCliqueGraph,
    find_passing_assignment,
    parse_rmcsp,
    parse_vertex,
    probe_soundness,
    verify_matrix_properties,
    verify_witness_clique,
    witness_clique,
)
from gapchain.stage_dispatcher import STAGE_MAPPER, run_chain
from gapchain.utilities import derive_seed, ensure_dir_exists
from gapchain.vectorsum import (
    check_gadget_properties,
    parse_instance,
    solve_vectorsum_bruteforce,
)

VERIFY_TARGETS = ("instance", "graph", "disperser", "witness")
ORACLE_PROBLEMS = ("sat", "vectorsum", "clique", "biclique", "densest")


@dataclass
class CommandResult:
    exit_code: int
    report: str
    output: Optional[str] = None
    extra: Dict[str, str] = field(default_factory=dict)


def read_text(file_name: str) -> str:
    with io.open(file_name, "rt", encoding="utf-8") as f:
        return f.read()


def write_text(file_name: str, text: str) -> None:
    parent = os.path.dirname(file_name)
    if parent:
        ensure_dir_exists(parent)
    with io.open(file_name, "wt", encoding="utf-8", newline="\n") as f:
        f.write(text)


def _run(
    report: ReportLog, body: Callable[[], Optional[str]], report_file: Optional[str] = None
) -> CommandResult:
    try:
        output = body()
        exit_code = EXIT_OK
    except GapchainBaseException as e:
        log.error(f"{type(e).__name__}: {e}")
        report.record("error", type(e).__name__)
        report.summary(str(e))
        output = None
        exit_code = e.exit_code
    report.record("exit", exit_code)
    if report_file:
        write_text(report_file, report.text)
    return CommandResult(exit_code, report.text, output)


def cmd_reduce(
    chain: str,
    in_file: str,
    out_file: Optional[str] = None,
    config: Optional[PipelineConfig] = None,
    report_file: Optional[str] = None,
) -> CommandResult:
    """
    Run one chain, or several joined by commas (e.g. "sat2vs,vs2clique"), on `in_file`.

    The output artifact goes to `out_file`; side artifacts (disperser, expander) go next
    to it with their own suffix.
    """
    config = (config or PipelineConfig()).validate()
    report = ReportLog()
    names = [c.strip() for c in chain.split(",") if c.strip()]
    result: Dict[str, Dict[str, str]] = {}

    def body() -> Optional[str]:
        unknown = [n for n in names if n not in STAGE_MAPPER]
        if not names or unknown:
            raise PreconditionError(f"unknown chain {unknown or chain!r}")
        report.record("chain", ",".join(names))
        report.record("seed", config.seed)
        out = run_chain(names, read_text(in_file), config, report)
        result["extra"] = out["extra"]
        if out_file:
            write_text(out_file, out["output"])
            for suffix, text in sorted(out["extra"].items()):
                write_text(os.path.splitext(out_file)[0] + suffix, text)
        return out["output"]

    res = _run(report, body, report_file)
    res.extra = result.get("extra", {})
    return res


def _lookup(graph: ExplicitGroupedGraph, rows: Sequence[Tuple[int, str]]) -> List[Vertex]:
    groups = list(graph.groups())
    picked = []
    for pos, label in rows:
        if not 1 <= pos <= len(groups):
            raise ParseError(f"witness names group {pos} of {len(groups)}")
        match = [v for v in graph.vertices(groups[pos - 1]) if graph.vertex_label(v) == label]
        if not match:
            raise ParseError(f"no vertex labeled {label!r} in group {pos}")
        picked.append(match[0])
    return picked


def _verify_instance(text: str, config: PipelineConfig, report: ReportLog) -> None:
    if text.startswith("rmcsp"):
        inst = parse_rmcsp(text, verify=False)
        mats = verify_matrix_properties(inst.mats, inst.source, config.budget_enum)
        report.record("kind", "rmcsp")
        report.record("matrix_injective", mats.injective)
        report.record("matrix_injective_scope", mats.injective_scope)
        report.record("matrix_pair_separating", mats.pair_separating)
        report.record("matrix_triple_separating", mats.triple_separating)
        for name, wit in sorted(mats.witnesses.items()):
            report.record(f"counterexample_{name}", wit)
        if not mats.ok:
            raise VerificationFailed(f"matrix properties fail: {mats.failed()}", mats)
        return
    inst_vs = parse_instance(text)
    gadgets = check_gadget_properties(inst_vs)
    report.record("kind", "vectorsum")
    report.record("gadget_p3", gadgets.p3)
    report.record("gadget_p4", gadgets.p4)
    for wit in gadgets.witnesses:
        report.record(f"counterexample_{wit[0]}", wit[1:])
    if not gadgets.ok:
        raise VerificationFailed("gadget properties fail", gadgets)


def _verify_graph(text: str, report: ReportLog) -> None:
    graph, sides = parse_graph(text)
    report.record("groups", graph.group_count)
    report.record("vertices", graph.vertex_count())
    report.record("edges", len(graph.edges()))
    bad = graph.find_intra_group_edge()
    report.record("groups_independent", bad is None)
    if bad is not None:
        report.record("counterexample_edge", bad)
        raise VerificationFailed(f"edge {bad} lies inside one group")
    if sides is not None:
        try:
            ExplicitBiclique(graph, sides)
        except PreconditionError as e:
            raise VerificationFailed(str(e))
        report.record("bipartite", True)


def _verify_disperser(text: str, config: PipelineConfig, report: ReportLog) -> None:
    d = parse_disperser(text)
    res = verify_disperser(
        d,
        mode=config.mode,
        trials=config.trials,
        seed=config.seed,
        budget=config.budget_enum,
    )
    report.record("m", d.m)
    report.record("k", d.k)
    report.record("ell", d.ell)
    report.record("r", d.r)
    report.record("threshold", d.threshold, "(1 - eps) m")
    report.record("checked", res.checked)
    capped = d.verified == CAPPED
    report.record("capped", capped)
    report.record("disperser", CAPPED if capped and res.ok else res.status)
    if res.violation_rate_bound is not None:
        report.record("violation_rate", res.violation_rate_bound, "3 / T")
    if not res.ok:
        report.record("counterexample_subsets", res.violation)
        report.record("counterexample_union", res.union_size)
        raise VerificationFailed(f"r-subset {res.violation} covers only {res.union_size}", res)


def _verify_witness(
    graph_text: str, witness_text: str, config: PipelineConfig, report: ReportLog
) -> None:
    problem, size, _, rows = parse_witness(witness_text)
    report.record("problem", problem)
    report.record("size", size)
    if graph_text.startswith("rmcsp"):
        if problem != "vectorsum":
            raise PreconditionError("an rmcsp instance takes a vectorsum witness")
        inst = parse_rmcsp(graph_text, budget=config.budget_enum)
        picked: Dict[int, int] = {}
        for row, (pos, label) in enumerate(rows, start=1):
            if not 1 <= pos <= inst.k:
                raise ParseError(f"witness row {row} names group {pos} of {inst.k}")
            if pos in picked:
                raise ParseError(f"witness row {row} repeats group {pos}")
            try:
                picked[pos] = int(label)
            except ValueError:
                raise ParseError(f"witness row {row}: vector index {label!r} is not an integer")
            if not 0 <= picked[pos] < len(inst.source.groups[pos - 1]):
                raise ParseError(f"witness row {row}: group {pos} has no vector {label}")
        missing = [pos for pos in range(1, inst.k + 1) if pos not in picked]
        if missing:
            raise ParseError(f"witness leaves groups {missing} without a vector")
        indices = [picked[pos] for pos in range(1, inst.k + 1)]
        check = verify_witness_clique(
            witness_clique(inst, tuple(indices)), seed=derive_seed(config.seed, "witness")
        )
        report.record("groups", check.groups, "8|F|^(4k)")
        report.record("variable_pairs", check.variable_pairs)
        report.record("sampled_pairs", check.sampled_pairs)
        report.record("failures", len(check.failures))
        if not check.ok:
            u, w = check.failures[0]
            raise VerificationFailed(f"vertices {u} and {w} are not adjacent", check)
        return
    graph, sides = parse_graph(graph_text)
    picked = _lookup(graph, rows)
    if len({graph.group_of(v) for v in picked}) != len(picked):
        raise VerificationFailed("witness picks two vertices in one group")
    if problem == "densest":
        edges = sum(
            1 for i, u in enumerate(picked) for w in picked[i + 1 :] if graph.adjacent(u, w)
        )
        report.record("induced_edges", edges)
        return
    if problem == "biclique":
        if sides is None:
            raise PreconditionError("a biclique witness needs a graph with side tags")
        side_of = dict(zip(graph.groups(), sides))
        left = [v for v in picked if side_of[graph.group_of(v)] == "L"]
        right = [v for v in picked if side_of[graph.group_of(v)] == "R"]
        ok = all(graph.adjacent(u, w) for u in left for w in right)
    else:
        ok = graph.is_clique(picked)
    report.record(f"is_{problem}", ok)
    if not ok:
        raise VerificationFailed(f"witness is not a {problem}")


def cmd_verify(
    target: str,
    files: Sequence[str],
    config: Optional[PipelineConfig] = None,
    report_file: Optional[str] = None,
) -> CommandResult:
    """
    Run the checker matching `target` and report pass/fail with counterexamples.

    witness takes two files: the instance (graph export or rmcsp) and the witness.
    """
    config = (config or PipelineConfig()).validate()
    report = ReportLog()

    def body() -> Optional[str]:
        if target not in VERIFY_TARGETS:
            raise PreconditionError(f"unknown verify target {target!r}")
        needed = 2 if target == "witness" else 1
        if len(files) != needed:
            raise PreconditionError(f"{target} verification takes {needed} file(s)")
        report.record("target", target)
        texts = [read_text(f) for f in files]
        if target == "instance":
            _verify_instance(texts[0], config, report)
        elif target == "graph":
            _verify_graph(texts[0], report)
        elif target == "disperser":
            _verify_disperser(texts[0], config, report)
        else:
            _verify_witness(texts[0], texts[1], config, report)
        report.record("result", "pass")
        return None

    res = _run(report, body, report_file)
    if res.exit_code != EXIT_OK:
        log.info(f"verify {target}: fail")
    return res


def _oracle_rmcsp(text: str, config: PipelineConfig, report: ReportLog) -> str:
    inst = parse_rmcsp(text, budget=config.budget_enum)
    asg = find_passing_assignment(inst, config.budget_enum)
    report.record("groups", inst.group_count(), "8|F|^(4k)")
    report.record("full_clique", asg is not None)
    if asg is None:
        probe = probe_soundness(inst, config.budget_oracle, config.budget_enum)
        report.record("layer_groups", probe.layer_groups)
        report.record("layer_best", probe.layer_best)
        report.record("lower_bound_only", probe.lower_bound_only)
        report.record("failing_families", probe.failing)
    return ""


def cmd_oracle(
    problem: str,
    file: str,
    config: Optional[PipelineConfig] = None,
    out_file: Optional[str] = None,
    report_file: Optional[str] = None,
) -> CommandResult:
    """Exact ground-truth solver for one problem; the witness goes to `out_file`."""
    config = (config or PipelineConfig()).validate()
    report = ReportLog()

    def body() -> Optional[str]:
        if problem not in ORACLE_PROBLEMS:
            raise PreconditionError(f"unknown oracle problem {problem!r}")
        report.record("problem", problem)
        text = read_text(file)
        witness = ""
        if problem == "sat":
            formula = parse_dimacs(text)
            limit = min(SAT_VAR_LIMIT, config.budget_enum.bit_length() - 1)
            tau = sat_bruteforce(formula, limit=limit)
            report.record("satisfiable", tau is not None)
            if tau is not None:
                report.record("assignment", tau)
        elif problem == "vectorsum":
            inst = parse_instance(text)
            found = solve_vectorsum_bruteforce(inst, config.budget_enum)
            report.record("solvable", found is not None)
            if found is not None:
                report.record("witness", found)
                lines = [f"witness vectorsum {len(found)}"]
                lines.extend(f"{i + 1} {j}" for i, j in enumerate(found))
                witness = "\n".join(lines + ["end"]) + "\n"
        elif problem == "clique" and text.startswith("rmcsp"):
            witness = _oracle_rmcsp(text, config, report)
        elif problem == "clique":
            graph = load_clique_instance(text, config.budget_enum)
            w = max_grouped_clique(
                graph,
                budget=config.budget_oracle,
                workers=config.workers,
                materialize_budget=config.budget_materialize,
            )
            report.record("groups", graph.group_count)
            report.record("size", w.size)
            report.record("lower_bound_only", w.lower_bound_only)
            witness = format_witness(graph, w, "clique")
        elif problem == "biclique":
            b = load_biclique(text)
            bw = max_grouped_biclique(
                b, budget=config.budget_oracle, materialize_budget=config.budget_materialize
            )
            report.record("k", b.k)
            report.record("size", bw.size)
            report.record("lower_bound_only", bw.lower_bound_only)
            joined = CliqueWitness(
                bw.left + bw.right, bw.left_groups + bw.right_groups, bw.lower_bound_only
            )
            witness = format_witness(b, joined, "biclique")
        else:
            graph, _ = parse_graph(text)
            dw = densest_grouped_subgraph(
                graph, budget=config.budget_oracle, materialize_budget=config.budget_materialize
            )
            report.record("groups", graph.group_count)
            report.record("edges", dw.edges)
            report.record("lower_bound_only", dw.lower_bound_only)
            witness = format_witness(graph, CliqueWitness(dw.vertices, dw.groups), "densest")
        if out_file and witness:
            write_text(out_file, witness)
        return witness

    return _run(report, body, report_file)


def cmd_adj(
    instance_file: str,
    u: str,
    w: str,
    config: Optional[PipelineConfig] = None,
    report_file: Optional[str] = None,
) -> CommandResult:
    """
    Adjacency oracle query. For an rmcsp instance u and w use the vertex syntax
    KIND:anchor#copy=payload; for a graph export they are vertex ids.
    """
    config = (config or PipelineConfig()).validate()
    report = ReportLog()

    def body() -> Optional[str]:
        text = read_text(instance_file)
        if text.startswith("rmcsp"):
            graph = RmCliqueGraph(parse_rmcsp(text, budget=config.budget_enum))
            a, b = parse_vertex(u, graph), parse_vertex(w, graph)
            adjacent = graph.adjacent(a, b)
        else:
            explicit, _ = parse_graph(text)
            try:
                ia, ib = int(u), int(w)
            except ValueError:
                raise ParseError(f"graph vertices are integer ids, got {u!r} and {w!r}")
            known = {v for g in explicit.groups() for v in explicit.members(g)}
            if ia not in known or ib not in known:
                raise ParseError(f"unknown vertex id in ({u}, {w})")
            adjacent = explicit.adjacent(ia, ib)
        report.record("u", u)
        report.record("w", w)
        report.record("adjacent", adjacent)
        return None

    return _run(report, body, report_file)


def cmd_ldt(
    table_file: str,
    config: Optional[PipelineConfig] = None,
    degree: int = 2,
    report_file: Optional[str] = None,
) -> CommandResult:
    """Reject rate of the line test on a tabulated function, with its distance and floor."""
    config = (config or PipelineConfig()).validate()
    report = ReportLog()

    def body() -> Optional[str]:
        f = parse_table(read_text(table_file))
        params = LdtParams.for_degree(degree, f.field)
        exact = config.mode == "exact"
        rate = reject_rate(
            f,
            params,
            mode="exhaustive" if exact else "montecarlo",
            trials=config.trials,
            seed=derive_seed(config.seed, "ldt"),
            budget=config.budget_enum,
        )
        report.record("m", f.m)
        report.record("ell", f.ell)
        report.record("p", f.field.p)
        report.record("degree", degree)
        report.record("alphas", params.alphas, "alpha_i = (-1)^(i+1) C(d+1, i)")
        report.record("rejected", rate.rejected)
        report.record("total", rate.total)
        report.record("reject_rate", rate.rate if rate.exact else float(rate.rate))
        if rate.half_width is not None:
            if rate.rejected in (0, rate.total):
                report.record("half_width", rate.half_width, "3 / T")
            else:
                report.record("half_width", rate.half_width, "1.96 sqrt(r (1 - r) / T)")
        try:
            dist = distance_to_degree(f, degree, budget=config.budget_enum, exact=exact)
        except BudgetExceeded:
            dist = distance_to_degree(f, degree, exact=False)
        report.record("distance", dist.delta)
        report.record("distance_method", dist.method)
        floor = soundness_floor(dist.delta, degree)
        report.record("soundness_floor", floor, "min(delta, 1/(d+2)^2) / 2")
        if rate.exact and dist.exact:
            report.record("soundness_holds", rate.rate >= floor)
        return None

    return _run(report, body, report_file)
