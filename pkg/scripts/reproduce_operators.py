"""Print σ¹¹, its singular values and the verdict for every named catalog channel.

    python3 scripts/reproduce_operators.py
"""

import numpy as np

from teleport4 import channel as ch
from teleport4 import sigma

NAMED = ["yeo-chua", "ghz4", "w4", "cnot-channel"]


def main():
    np.set_printoptions(precision=4, suppress=True)
    for name in NAMED + ["bell-pairs:i=1,j=1"]:
        report = sigma.analyze(ch.parse_catalog_ref(name))
        cl = report.classification
        print(f"== {name}: {cl.verdict.value}, success {cl.success_probability:.6f}")
        print(report.sigma11)
        print("singular values:", np.round(cl.singular_values, 12))
        print(f"completeness defect {report.completeness_defect:.1e}, "
              f"Pauli-relation defect {report.pauli_relation_defect:.1e}\n")


if __name__ == "__main__":
    main()
