"""The whole forge pipeline on a user-defined method.

Defines Bogacki-Shampine 3(2) as a JSON method description, validates it in
exact rational arithmetic, renders its specialized solver module, loads that
module, and integrates the van der Pol oscillator with it -- the same path
`forge generate` takes for the shipped method file.

Run:  python demos/custom_method.py
"""
import json
import tempfile
from pathlib import Path

import numpy as np

from rkforge.codegen import format_manifest, generate_module_set
from rkforge.problems import benchmark_case
from rkforge.tableau import parse_method_file, validate_tableau

BOGACKI_SHAMPINE = [{
    "name": "BS32",
    "description": "Bogacki-Shampine 3(2) pair, 4 stages, first-same-as-last "
                   "(Appl. Math. Lett. 2, 1989).",
    "stage": 4,
    "order": 3,
    "extrapolation_order": 2,
    "a": [["0", "0", "0", "0"],
          ["1/2", "0", "0", "0"],
          ["0", "3/4", "0", "0"],
          ["2/9", "1/3", "4/9", "0"]],
    "b": ["2/9", "1/3", "4/9", "0"],
    "b_hat": ["7/24", "1/4", "1/3", "1/8"],
    "c": ["0", "1/2", "3/4", "1"],
}]

methods = parse_method_file(json.dumps(BOGACKI_SHAMPINE))
report = validate_tableau(methods[0], strict=True)
print(f"validation: ok={report.ok}, warnings={[str(w) for w in report.warnings]}")

with tempfile.TemporaryDirectory() as out:
    manifest = generate_module_set(methods, out)
    print("generated files:")
    print(format_manifest(manifest))

    # load the rendered module and use its drivers directly
    namespace = {}
    source = (Path(out) / "bs32.py").read_text()
    exec(compile(source, "bs32.py", "exec"), namespace)

    case = benchmark_case("vdp")
    t_n, y_n = namespace["BS32_last"](case.problem, 1e-8, 1e-8, case.y_0,
                                      case.t_start, case.t_stop)
    print(f"van der Pol with the generated BS32: y({t_n:g}) = {y_n}")

    log = namespace["BS32_info"](case.problem, 1e-4, 1e-4, case.y_0,
                                 case.t_start, case.t_stop)
    print(f"steps at tol 1e-4: {log.accepted_t.size} accepted, "
          f"{log.rejected_t.size} rejected")
