"""sat2vs: normalized 3-CNF in DIMACS to a k-VectorSum instance."""
from gapchain.base_stage import BaseStage
from gapchain.cnf import parse_dimacs, tovey_normalize
from gapchain.ff import PrimeField
from gapchain.vectorsum.gadgets import check_gadget_properties
from gapchain.vectorsum.instance import format_instance
from gapchain.vectorsum.reduction import reduce_sat_to_vectorsum


class Sat2VsStage(BaseStage):
    name = "sat2vs"
    input_kind = "DIMACS CNF"

    def run(self, text: str) -> str:
        cfg = self.config
        formula = parse_dimacs(text)
        self.record("variables", formula.num_vars)
        self.record("clauses", formula.num_clauses)
        if not formula.is_normalized():
            formula = tovey_normalize(formula)
            self.log.info(f"normalized to {formula.num_vars} variables")
            self.summary("formula rewritten so every variable occurs in at most 3 clauses")
        self.record("normalized_variables", formula.num_vars)
        self.record("normalized_clauses", formula.num_clauses)

        inst = reduce_sat_to_vectorsum(formula, cfg.k, PrimeField(cfg.p), workers=cfg.workers)
        layout = inst.layout
        assert layout is not None
        self.record("p", cfg.p)
        self.record("k", inst.k)
        self.record("X", len(layout.X))
        self.record("Y", len(layout.Y))
        self.record("d", inst.d, "d = |X| + 2|Y|")
        self.record("group_sizes", tuple(len(g) for g in inst.groups))
        self.record("n", inst.size, "n = sum_i |V_i|")
        if inst.empty_groups:
            self.summary(f"parts {[i + 1 for i in inst.empty_groups]} are unsatisfiable")

        gadgets = check_gadget_properties(inst)
        self.record("gadget_p3", gadgets.p3)
        self.record("gadget_p4", gadgets.p4)
        self.summary(f"gadget properties {'pass' if gadgets.ok else 'FAIL'}")
        return format_instance(inst)
