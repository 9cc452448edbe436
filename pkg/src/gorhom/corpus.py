"""The bundled corpus: small algebras, extensions, and module families.

Everything here is built from the validated constructors, once, and
memoized; the same objects back the CLI `suite` command, the acceptance
tests, and the serialized data files shipped with the package.  The
selection covers semisimple, hereditary, self-injective, and properly
1-Gorenstein behavior.
"""

from __future__ import annotations

from typing import Dict, List

from .algebra import (
    Algebra,
    Quiver,
    cyclic_group_table,
    field_algebra,
    group_algebra,
    matrix_algebra,
    path_algebra,
    product_algebra,
    symmetric_group_table,
    truncated_extension,
)
from .dgcplx import GradedModule, functor_F
from .exactlin import FieldSpec, Mat
from .frobenius import Bimodule, RingExtension, column_bimodule, identity_extension
from .homology import ComplexObj
from .modrep import (
    Module,
    direct_sum,
    radical_submodule_basis,
    regular_module,
    structural_modules,
    submodule,
    top_of,
)

F2 = FieldSpec(2)
F3 = FieldSpec(3)
F7 = FieldSpec(7)
QQ = FieldSpec(0)

_algebras: Dict[str, Algebra] = {}
_extensions: Dict[str, RingExtension] = {}
_bimodules: Dict[str, Bimodule] = {}


def a2_quiver() -> Quiver:
    return Quiver(2, arrows=((0, 1, "a"),))


def a3_quiver() -> Quiver:
    return Quiver(3, arrows=((0, 1, "a"), (1, 2, "b")))


def nakayama_quiver() -> Quiver:
    return Quiver(2, arrows=((0, 1, "a"), (1, 0, "b")),
                  relations=(((("b", "a"), 1),), ((("a", "b"), 1),)))


def corpus_algebra(name: str) -> Algebra:
    """Build (once) a bundled algebra by name."""
    if name in _algebras:
        return _algebras[name]
    if name == "f2":
        a = field_algebra(F2)
    elif name == "f3":
        a = field_algebra(F3)
    elif name == "f7":
        a = field_algebra(F7)
    elif name == "q":
        a = field_algebra(QQ)
    elif name == "f2x2":
        a = truncated_extension(field_algebra(F2), 2)[0]
    elif name == "f2x3":
        a = truncated_extension(field_algebra(F2), 3)[0]
    elif name == "f2c2":
        a = group_algebra(cyclic_group_table(2), F2)
    elif name == "f3c3":
        a = group_algebra(cyclic_group_table(3), F3)
    elif name == "f7s3":
        a = group_algebra(symmetric_group_table(3), F7)
    elif name == "a2":
        a = path_algebra(a2_quiver(), F2)
    elif name == "a3":
        a = path_algebra(a3_quiver(), F2)
    elif name == "nak2":
        a = path_algebra(nakayama_quiver(), F2)
    elif name == "a2t2":
        a = truncated_extension(corpus_algebra("a2"), 2)[0]
    elif name == "m2f2x2":
        a = matrix_algebra(corpus_algebra("f2x2"), 2)
    elif name == "prod_f2_a2":
        a = product_algebra(corpus_algebra("f2"), corpus_algebra("a2"))
    else:
        raise KeyError(f"unknown corpus algebra {name!r}")
    _algebras[name] = a
    return a


ALGEBRA_NAMES = ["f2", "f3", "f7", "q", "f2x2", "f2x3", "f2c2", "f3c3", "f7s3",
                 "a2", "a3", "nak2", "a2t2", "m2f2x2", "prod_f2_a2"]

# algebras whose Gorenstein profile is finite and which carry idempotents
GORENSTEIN_NAMES = ["f2", "f3", "f7", "q", "f2x2", "f2x3", "f2c2", "f3c3",
                    "a2", "a3", "nak2", "a2t2", "m2f2x2", "prod_f2_a2"]


def corpus_extension(name: str) -> RingExtension:
    if name in _extensions:
        return _extensions[name]
    if name == "id_f2":
        ext = identity_extension(corpus_algebra("f2"))
    elif name == "id_nak2":
        ext = identity_extension(corpus_algebra("nak2"))
    elif name == "f2_f2c2":
        base, total = corpus_algebra("f2"), corpus_algebra("f2c2")
        ext = RingExtension(base, total, Mat(F2, [[1], [0]]))
    elif name == "f3_f3c3":
        base, total = corpus_algebra("f3"), corpus_algebra("f3c3")
        ext = RingExtension(base, total, Mat(F3, [[1], [0], [0]]))
    elif name == "f2_f2x2":
        base = field_algebra(F2)
        total, emb = truncated_extension(base, 2)
        ext = RingExtension(base, total, emb)
    elif name == "f2_f2x3":
        base = field_algebra(F2)
        total, emb = truncated_extension(base, 3)
        ext = RingExtension(base, total, emb)
    elif name == "a2_a2t2":
        base = corpus_algebra("a2")
        total, emb = truncated_extension(base, 2)
        ext = RingExtension(base, total, emb)
    else:
        raise KeyError(f"unknown corpus extension {name!r}")
    _extensions[name] = ext
    return ext


EXTENSION_NAMES = ["id_f2", "id_nak2", "f2_f2c2", "f3_f3c3", "f2_f2x2",
                   "f2_f2x3", "a2_a2t2"]

TRANSFER_EXTENSIONS = ["f2_f2c2", "f3_f3c3", "f2_f2x3", "a2_a2t2"]

FROBENIUS_YES_EXTENSIONS = ["id_f2", "id_nak2", "f2_f2x2", "f2_f2x3",
                            "f2_f2c2", "f3_f3c3", "a2_a2t2"]


def corpus_bimodule(name: str) -> Bimodule:
    if name in _bimodules:
        return _bimodules[name]
    if name == "morita_col":
        r = corpus_algebra("f2x2")
        s = corpus_algebra("m2f2x2")
        bm = column_bimodule(r, 2, s)
    else:
        raise KeyError(f"unknown corpus bimodule {name!r}")
    _bimodules[name] = bm
    return bm


def module_corpus(a: Algebra, minimum: int = 8) -> List[Module]:
    """A deterministic family of test modules over an algebra.

    Simples, projective and injective indecomposables, the regular
    module, the radicals and tops of the projectives, padded with direct
    sums until at least `minimum` modules are present.
    """
    s = structural_modules(a)
    reg = regular_module(a)
    out: List[Module] = list(s.simples) + list(s.projectives) + list(s.injectives) + [reg]
    for p in s.projectives:
        rad = radical_submodule_basis(p)
        if rad.cols:
            out.append(submodule(p, rad)[0])
    seen = len(out)
    i = 0
    while len(out) < minimum:
        a_mod = out[i % seen]
        b_mod = out[(i + 1) % seen]
        out.append(direct_sum([a_mod, b_mod])[0])
        i += 1
    return out


def bad_module_for_counterexample() -> Module:
    """The simple at the source vertex of A2: not Gorenstein projective."""
    a2 = corpus_algebra("a2")
    s = structural_modules(a2)
    p1 = next(p for p in s.projectives if p.dim == 2)
    return top_of(p1)[0]


def complex_corpus(minimum: int = 20) -> List[ComplexObj]:
    """Bounded complexes over the Gorenstein corpus algebras."""
    out: List[ComplexObj] = []
    for name in ["a2", "f2c2", "nak2", "f2x2"]:
        a = corpus_algebra(name)
        s = structural_modules(a)
        mods = list(s.simples) + list(s.projectives)
        for m in mods:
            out.append(ComplexObj(a, {0: m}, {}))
        for m in mods[:2]:
            out.append(functor_F(GradedModule(a, {0: m})))
        if len(mods) >= 2:
            out.append(functor_F(GradedModule(a, {0: mods[0], 1: mods[1]})))
    i = 0
    while len(out) < minimum:
        out.append(out[i])
        i += 1
    return out


def graded_corpus() -> List[GradedModule]:
    out: List[GradedModule] = []
    for name in ["a2", "f2c2", "nak2"]:
        a = corpus_algebra(name)
        s = structural_modules(a)
        out.append(GradedModule(a, {0: s.simples[0]}))
        out.append(GradedModule(a, {0: s.projectives[0], 2: s.simples[0]}))
    return out


def export_data(directory) -> List[str]:
    """Serialize the corpus into a directory; returns the file names."""
    from pathlib import Path

    from .algebra import save_algebra, save_quiver
    from .frobenius import save_bimodule, save_extension
    from .homology import save_complex
    from .modrep import save_module

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name in ALGEBRA_NAMES:
        save_algebra(corpus_algebra(name), directory / f"{name}.alg")
        written.append(f"{name}.alg")
    for qname, q in [("a2", a2_quiver()), ("a3", a3_quiver()), ("nak2", nakayama_quiver())]:
        save_quiver(q, directory / f"{qname}.quiver")
        written.append(f"{qname}.quiver")
    for name in EXTENSION_NAMES:
        ext = corpus_extension(name)
        base_name = next(n for n in ALGEBRA_NAMES if corpus_algebra(n) == ext.base)
        total_name = next(n for n in ALGEBRA_NAMES if corpus_algebra(n) == ext.total)
        save_extension(ext, directory / f"{name}.ext",
                       base_ref=f"{base_name}.alg", total_ref=f"{total_name}.alg")
        written.append(f"{name}.ext")
    save_bimodule(corpus_bimodule("morita_col"), directory / "morita_col.bimod",
                  left_ref="m2f2x2.alg", right_ref="f2x2.alg")
    written.append("morita_col.bimod")
    # a few sample modules and a sample complex for the CLI
    a2 = corpus_algebra("a2")
    s = structural_modules(a2)
    save_module(bad_module_for_counterexample(), directory / "a2_s1.mod",
                algebra_ref="a2.alg")
    written.append("a2_s1.mod")
    save_module(regular_module(a2), directory / "a2_regular.mod", algebra_ref="a2.alg")
    written.append("a2_regular.mod")
    f2c2 = corpus_algebra("f2c2")
    k = structural_modules(f2c2).simples[0]
    save_module(k, directory / "f2c2_simple.mod", algebra_ref="f2c2.alg")
    written.append("f2c2_simple.mod")
    sample = complex_corpus()[0]
    save_complex(sample, directory / "a2_stalk.cpx", algebra_ref="a2.alg")
    written.append("a2_stalk.cpx")
    return written
