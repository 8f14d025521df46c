"""vs2clique: k-VectorSum instance to the Reed-Muller CSP and its grouped clique graph."""
from gapchain.base_stage import BaseStage
from gapchain.rmcsp.checks import RmFamily, family_size
from gapchain.rmcsp.instance import RmCspInstance, default_ell, format_rmcsp, instance_summary
from gapchain.rmcsp.matrices import sample_matrices
from gapchain.vectorsum import parse_instance


class Vs2CliqueStage(BaseStage):
    name = "vs2clique"
    input_kind = "vectorsum instance"

    def run(self, text: str) -> str:
        cfg = self.config
        source = parse_instance(text)
        if source.field.p != cfg.p:
            self.log.warning(f"instance field F_{source.field.p} overrides --field {cfg.p}")
        if cfg.ell is None:
            ell = default_ell(source)
            self.record("ell", ell, "l = 2k + 4 ceil(log2 n)")
        else:
            ell = cfg.ell
            self.record("ell", ell)

        mats, matrix_report = sample_matrices(
            source, ell, seed=cfg.seed, max_retries=cfg.max_retries, budget=cfg.budget_enum
        )
        inst = RmCspInstance(source, mats, verify=False)
        inst.report = matrix_report
        summary = instance_summary(inst)
        p, k = inst.p, inst.k
        self.record("p", p)
        self.record("k", k)
        self.record("d", source.d)
        self.record("n", source.size)
        self.record("k_prime", summary["k_prime"], "k' = 8|F|^(4k)")
        self.record("type1_groups", 2 * p ** (4 * k), "2|F|^(4k)")
        self.record("type2_groups", 2 * p ** (4 * k), "2|F|^(3k) * |F|^k")
        self.record("type3_groups", 4 * p ** (4 * k), "|F|^(2k) * 4|F|^(2k)")
        self.record("tests_LD", family_size(inst, RmFamily.LOW_DEGREE), "|F|^(4k)")
        linearity = family_size(inst, RmFamily.LINEARITY_ALPHA)
        linearity += family_size(inst, RmFamily.LINEARITY_BETA)
        self.record("tests_LA_LB", linearity, "2|F|^(3k)")
        self.record("tests_NB", family_size(inst, RmFamily.NEIGHBOR), "k|F|^(2k)")
        self.record("tests_WR", family_size(inst, RmFamily.WRAP), "|F|^(2k)")
        self.record(
            "vertex_bound",
            summary["vertex_bound"],
            "2|F|^(4k+4l) + 2|F|^(4k+2l) + 4|F|^(4k+l)",
        )
        self.record("matrix_injective", matrix_report.injective)
        self.record("matrix_injective_scope", matrix_report.injective_scope)
        self.record("matrix_pair_separating", matrix_report.pair_separating)
        self.record("matrix_triple_separating", matrix_report.triple_separating)
        self.summary(f"matrix properties pass ({matrix_report.injective_scope} injectivity)")
        return format_rmcsp(inst)
