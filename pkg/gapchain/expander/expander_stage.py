"""amplify: gap amplification of a grouped clique instance by an expander-walk product."""
from typing import Optional, Tuple

from gapchain.base_stage import BaseStage
from gapchain.expander.product import graph_product
from gapchain.expander.regular import RegularGraph, complete_graph, format_regular, random_regular
from gapchain.expander.spectral import spectral_lambda
from gapchain.expander.walks import soundness_bound, tensor_soundness_bound
from gapchain.graphs import GroupedGraph, format_graph, parse_graph


def load_clique_instance(text: str, budget: int) -> GroupedGraph:
    """A grouped graph export, or an rmcsp instance read as its CSP clique graph."""
    if text.startswith("rmcsp"):
        from gapchain.rmcsp import RmCliqueGraph, parse_rmcsp

        return RmCliqueGraph(parse_rmcsp(text, budget=budget))
    graph, _ = parse_graph(text)
    return graph


def choose_expander(k: int, degree: int, seed: int) -> RegularGraph:
    """K_k when the requested degree reaches k - 1, else a seeded random degree-regular graph."""
    if degree >= k - 1:
        return complete_graph(k)
    return random_regular(k, degree, seed=seed)


class AmplifyStage(BaseStage):
    name = "amplify"
    input_kind = "grouped clique instance"

    def run(self, text: str) -> str:
        cfg = self.config
        base = load_clique_instance(text, cfg.budget_enum)
        k, t, eps = base.group_count, cfg.t, float(cfg.eps)
        self.record("k", k)
        self.record("t", t)
        self.record("eps", cfg.eps)
        self.record("product", cfg.product)
        if t == 1:
            self.record("groups", k)
            self.record("identity_product", True)
            self.summary("identity product")
            return format_graph(self.materialize(base))

        h: Optional[RegularGraph] = None
        if cfg.product == "tensor":
            groups, bound = self._tensor_quantities(k, t, eps)
        else:
            h, groups, bound = self._walk_quantities(k, t, eps)
        self.record("completeness_clique", groups, "full clique maps to one vertex per group")
        product = graph_product(base, h, t, kind=cfg.product)
        out = self.materialize(product)
        if h is not None:
            self.extra_outputs[".expander"] = format_regular(h)
        self.summary(f"product of {groups} groups, soundness clique bound {bound:.6g}")
        return format_graph(out)

    def _walk_quantities(self, k: int, t: int, eps: float) -> Tuple[RegularGraph, int, float]:
        cfg = self.config
        h = choose_expander(k, cfg.degree, cfg.seed)
        estimate = spectral_lambda(h)
        lam = estimate.value
        groups = k * h.d ** (t - 1)
        self.record("d", h.d)
        self.record("expander", "complete" if h.d == k - 1 else "random_regular")
        self.record("lambda", lam)
        self.record("lambda_method", estimate.method)
        self.record("groups", groups, "k * d^(t-1)")
        bound = soundness_bound(k, h.d, t, lam, eps)
        self.record(
            "soundness_bound", bound, "k * d^(t-1) * ((1 - lambda) * sqrt(eps) + lambda)^(t-1)"
        )
        return h, groups, bound

    def _tensor_quantities(self, k: int, t: int, eps: float) -> Tuple[int, float]:
        groups = k ** t
        self.record("groups", groups, "k^t")
        bound = tensor_soundness_bound(k, eps, t)
        self.record("soundness_bound", bound, "(eps * k)^t")
        return groups, bound
