import re
from pathlib import Path

import pytest

from rkforge import shipped_methods
from rkforge.codegen import (
    GeneratedModule,
    TemplateError,
    VARIANTS,
    format_manifest,
    generate_module_set,
    load_templates,
    render_method_module,
    render_solver_source,
)
from rkforge.tableau import parse_method_file
from test_tableau import SAMPLE, sample_tableau


class TestTemplates:
    def test_default_templates_load(self):
        ts = load_templates()
        assert tuple(ts.adaptive_sections) == ("prelude", "trajectory", "last", "info")
        assert tuple(ts.fixed_sections) == ("fixed_trajectory", "fixed_last")

    def test_unknown_placeholder_rejected(self, tmp_path):
        bad = tmp_path / "adaptive.tmpl"
        good = load_templates()
        src = Path(str(__import__("rkforge").__path__[0])) / "templates" / "adaptive.py.tmpl"
        bad.write_text(src.read_text() + "\n# {{mystery}}\n")
        with pytest.raises(TemplateError, match="mystery"):
            load_templates(adaptive_path=bad)

    def test_missing_required_placeholder_rejected(self, tmp_path):
        bad = tmp_path / "adaptive.tmpl"
        src = Path(str(__import__("rkforge").__path__[0])) / "templates" / "adaptive.py.tmpl"
        bad.write_text(src.read_text().replace("{{y_hat_update}}", "0"))
        with pytest.raises(TemplateError, match="y_hat_update"):
            load_templates(adaptive_path=bad)

    def test_bad_sections_rejected(self, tmp_path):
        bad = tmp_path / "fixed.tmpl"
        bad.write_text("#:: section wrong\ndef x(): pass\n")
        with pytest.raises(TemplateError, match="sections"):
            load_templates(fixed_path=bad)


class TestRenderSolverSource:
    def test_five_variants(self):
        modules = render_solver_source(sample_tableau())
        assert tuple(m.variant for m in modules) == VARIANTS
        assert all(isinstance(m, GeneratedModule) for m in modules)
        assert all(m.method_name == "sample3" for m in modules)

    def test_each_variant_compiles(self):
        for m in render_solver_source(sample_tableau()):
            compile(m.source, f"<{m.variant}>", "exec")

    def test_sample_stage_structure(self):
        src = render_method_module(sample_tableau())
        # stage 2 references only k1 (a21 = 1)
        stage2 = re.search(r"    k2 = (.+)", src).group(1)
        assert "k1[a]" in stage2 and "k2" not in stage2.replace("k2 =", "")
        # stage 3 references k1 and k2 through the 1/4 constants
        stage3 = re.search(r"    k3 = (.+)", src).group(1)
        assert "A_3_1" in stage3 and "A_3_2" in stage3
        assert "A_3_1 = 0.25" in src and "A_3_2 = 0.25" in src
        # the main update omits k3 (b3 = 0)
        update = re.search(r"    y_next = (.+)", src).group(1)
        assert "k3" not in update
        assert "B_1" in update and "B_2" in update

    def test_identical_weight_rows_render_symmetrically(self):
        t = sample_tableau()
        twin = type(t)(name="twin", description="d", s=t.s, p=t.p, p_hat=t.p,
                       a=t.a, b=t.b, b_hat=t.b, c=t.c)
        src = render_method_module(twin)
        y_expr = re.search(r"    y_next = (.+)", src).group(1)
        yh_expr = re.search(r"    y_hat_next = (.+)", src).group(1)
        assert y_expr.replace("B_", "BH_") == yh_expr

    def test_rendering_is_deterministic(self):
        a = render_method_module(sample_tableau())
        b = render_method_module(sample_tableau())
        assert a == b

    def test_invalid_tableau_rejected(self):
        t = sample_tableau()
        broken = type(t)(name=t.name, description="", s=t.s, p=t.p, p_hat=t.p_hat,
                         a=t.a, b=t.b, b_hat=t.b_hat,
                         c=(t.c[0], t.c[1], t.c[2] + 1))
        with pytest.raises(ValueError, match="invalid"):
            render_solver_source(broken)

    def test_zero_elision_everywhere(self):
        for t in shipped_methods():
            src = render_method_module(t)
            for line in src.splitlines():
                m = re.match(r"(A_\d+_\d+|B\w*_\d+|C_\d+) = (.+)", line)
                if m:
                    assert float(m.group(2)) != 0.0, line

    def test_no_array_indexed_coefficients(self):
        # coefficients must be scalar constants, never array lookups
        for t in shipped_methods():
            src = render_method_module(t)
            assert not re.search(r"\b(a|b|b_hat|c|A|B|BH|C)\[", src)

    def test_all_nonzero_coefficients_present(self):
        t = next(m for m in shipped_methods() if m.name == "DOPRI5")
        src = render_method_module(t)
        names = set(re.findall(r"^(\w+) = ", src, re.MULTILINE))
        expected = {f"A_{i+1}_{j+1}" for i in range(t.s) for j in range(i)
                    if t.a[i][j] != 0}
        expected |= {f"B_{j+1}" for j in range(t.s) if t.b[j] != 0}
        expected |= {f"BH_{j+1}" for j in range(t.s) if t.b_hat[j] != 0}
        expected |= {f"C_{i+1}" for i in range(1, t.s) if t.c[i] != 0}
        assert expected <= names


class TestGenerateModuleSet:
    def test_sample_set_and_manifest(self, tmp_path):
        methods = parse_method_file(SAMPLE)
        manifest = generate_module_set(methods, tmp_path)
        assert [rel for rel, _ in manifest] == ["__init__.py", "sample3.py"]
        text = format_manifest(manifest)
        for line in text.splitlines():
            rel, digest = line.split(" ")
            assert len(digest) == 64
            assert (tmp_path / rel).exists()

    def test_rerun_hashes_stable(self, tmp_path):
        methods = parse_method_file(SAMPLE)
        m1 = generate_module_set(methods, tmp_path)
        m2 = generate_module_set(methods, tmp_path)
        assert m1 == m2

    def test_empty_sequence_gives_index_only(self, tmp_path):
        manifest = generate_module_set([], tmp_path)
        assert [rel for rel, _ in manifest] == ["__init__.py"]
        assert "METHODS = {" in (tmp_path / "__init__.py").read_text()

    def test_duplicate_names_abort_before_write(self, tmp_path):
        t = sample_tableau()
        with pytest.raises(ValueError, match="duplicate"):
            generate_module_set([t, t], tmp_path / "out")
        assert not (tmp_path / "out").exists() or not list((tmp_path / "out").iterdir())

    def test_generated_module_runs_standalone(self, tmp_path):
        import numpy as np
        methods = parse_method_file(SAMPLE)
        generate_module_set(methods, tmp_path)
        namespace = {}
        code = (tmp_path / "sample3.py").read_text()
        exec(compile(code, "sample3.py", "exec"), namespace)
        f = lambda t, y: np.asarray(y, dtype=float)
        y1, y2 = namespace["_step"](f, 0.0, np.array([1.0]), 0.1)
        assert y1[0] == pytest.approx(1.105, abs=1e-15)
        assert y2[0] == pytest.approx(1.1051666666666666, abs=1e-15)

    def test_shipped_tree_matches_generator_output(self, tmp_path):
        # the committed generated/ directory is exactly what the generator
        # produces from the shipped method file
        methods = shipped_methods()
        manifest = generate_module_set(methods, tmp_path)
        import rkforge.generated as gen
        committed = Path(gen.__file__).parent
        for rel, digest in manifest:
            assert (committed / rel).read_text() == (tmp_path / rel).read_text(), rel


class TestVariantConsistency:
    def test_last_variant_matches_trajectory_end(self):
        import numpy as np
        from rkforge.generated import dopri5
        f = lambda t, y: np.array([y[1], -y[0]])
        traj = dopri5.DOPRI5(f, 1e-9, 1e-9, np.array([1.0, 0.0]), 0.0, 3.0)
        t_n, y_n = dopri5.DOPRI5_last(f, 1e-9, 1e-9, np.array([1.0, 0.0]), 0.0, 3.0)
        assert t_n == traj.times[-1]
        assert np.array_equal(y_n, traj.states[-1])

    def test_info_variant_matches_trajectory_grid(self):
        import numpy as np
        from rkforge.generated import dopri5
        f = lambda t, y: np.array([y[1], -y[0]])
        traj = dopri5.DOPRI5(f, 1e-9, 1e-9, np.array([1.0, 0.0]), 0.0, 3.0)
        log = dopri5.DOPRI5_info(f, 1e-9, 1e-9, np.array([1.0, 0.0]), 0.0, 3.0)
        assert np.array_equal(log.accepted_t, traj.times[1:])

    def test_variant_source_executes_standalone(self):
        import numpy as np
        [traj_mod] = [m for m in render_solver_source(sample_tableau())
                      if m.variant == "adaptive-last"]
        ns = {}
        exec(compile(traj_mod.source, "<adaptive-last>", "exec"), ns)
        t_n, y_n = ns["sample3_last"](lambda t, y: np.asarray(y), 1e-6, 1e-6,
                                      np.array([1.0]), 0.0, 1.0)
        assert t_n == 1.0
        assert abs(float(y_n[0]) - np.e) < 1e-4
