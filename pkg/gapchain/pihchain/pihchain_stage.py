"""The clique to biclique to densest subgraph stages."""
import math

from gapchain.base_stage import BaseStage
from gapchain.exceptions import ParseError, VerificationFailed
from gapchain.graphs import format_graph, parse_graph
from gapchain.pihchain.biclique import ExplicitBiclique, biclique_sides, clique_to_biclique
from gapchain.pihchain.compress import biclique_compress
from gapchain.pihchain.densest import (
    biclique_to_densest,
    densest_completeness_value,
    densest_soundness_bound,
)
from gapchain.pihchain.disperser import (
    CAPPED,
    disperser_ell,
    format_disperser,
    make_disperser,
    verify_disperser,
    with_verification,
)


def load_biclique(text: str) -> ExplicitBiclique:
    """A grouped graph export whose groups carry L/R side tags."""
    graph, sides = parse_graph(text)
    if sides is None:
        raise ParseError("biclique input needs an L/R side tag on every group")
    return ExplicitBiclique(graph, sides)


class Clique2BicliqueStage(BaseStage):
    name = "clique2biclique"
    input_kind = "grouped clique instance"

    def run(self, text: str) -> str:
        from gapchain.expander.expander_stage import load_clique_instance

        source = load_clique_instance(text, self.config.budget_enum)
        b = clique_to_biclique(source)
        self.record("k", b.k)
        self.record("groups", b.group_count, "2k")
        self.record("completeness", f"K_{b.k},{b.k}", "clique of size k lifts to both sides")
        self.record("decoded_clique", "|L|+|R|-k", "biclique (L, R) decodes to a clique")
        return format_graph(self.materialize(b), biclique_sides(b))


def log_parameter(cfg_c: float, k: int, base: int) -> int:
    """r = ceil(c * log_base k), at least 1."""
    return max(1, math.ceil(cfg_c * math.log(k, base))) if k > 1 else 1


class CompressStage(BaseStage):
    name = "compress"
    input_kind = "grouped biclique instance"

    def run(self, text: str) -> str:
        cfg = self.config
        b = load_biclique(text)
        m, k = b.k, cfg.k
        if cfg.r is not None:
            r = cfg.r
            self.record("r", r)
        else:
            r = log_parameter(float(cfg.c_log_k), k, cfg.log_base)
            self.record("r", r, f"r = ceil({cfg.c_log_k} * log_{cfg.log_base} k)")
        self.record("m", m)
        self.record("k", k)
        self.record("eps", cfg.eps)
        ell = disperser_ell(m, r, cfg.eps)
        self.record("ell_formula", ell, "l = ceil(3m / (eps r))")
        d = make_disperser(m, k, r, cfg.eps, seed=cfg.seed, cap=cfg.disperser_cap)
        self.record("ell", d.ell)
        self.record("ell_capped", d.verified == CAPPED)
        if d.verified == CAPPED:
            self.summary(f"l capped at m = {m}: every union is all of [m], no dispersion shown")

        report = verify_disperser(
            d,
            mode=cfg.mode,
            trials=cfg.trials,
            seed=cfg.seed,
            budget=cfg.budget_enum,
        )
        self.record("disperser_checked", report.checked)
        if report.violation_rate_bound is not None:
            self.record("disperser_violation_rate", report.violation_rate_bound, "3 / T")
        if not report.ok:
            self.record("disperser_violation", report.violation)
            raise VerificationFailed(
                f"disperser union of {report.violation} has {report.union_size} elements", report
            )
        d = with_verification(d, report)
        self.record("disperser", d.verified)
        self.extra_outputs[".disperser"] = format_disperser(d)

        c = biclique_compress(b, d)
        self.record("groups", c.group_count, "2k")
        self.record("completeness", f"K_{k},{k}", "K_{m,m} restricts to every subset")
        self.record(
            "soundness_cover", d.threshold, "any r groups per side cover (1 - eps) m source groups"
        )
        return format_graph(self.materialize(c), biclique_sides(c))


class Biclique2DensestStage(BaseStage):
    name = "biclique2densest"
    input_kind = "grouped biclique instance"

    def run(self, text: str) -> str:
        cfg = self.config
        b = load_biclique(text)
        g = biclique_to_densest(b)
        self.record("k", b.k)
        self.record("groups", g.group_count, "2k")
        self.record("completeness_edges", densest_completeness_value(b.k), "C(2k, 2)")
        self.record(
            "soundness_edges",
            densest_soundness_bound(b.k, cfg.eps),
            "eps * k^2 + 2 C(k, 2)",
        )
        return format_graph(self.materialize(g))
