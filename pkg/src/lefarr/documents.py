"""Input documents (YAML) and report serialization (sorted JSON).

An input document looks like::

    variables: 3
    field: rational            # or {prime: 1073741827}
    seed: 20190                # optional
    generators:
      - {coeffs: ["1", "0", "-3/7"], power: 3}
      - {monomial: [1, 1, 1]}
      - {terms: [{coeff: "2", exponents: [2, 0, 0]}, {coeff: "-1", exponents: [0, 1, 1]}]}
    arrangement:               # lines as coefficient lists
      - [1, 0, 0]
    arrangement_power: 8       # ideal of 8th powers of the arrangement lines
    points:                    # explicit point set
      - [1, 2, 3]
    options:
      slp: {i: 0, k: 2}
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

import yaml

from .errors import InputError, LefarrError
from .exactmath import PrimeField, format_scalar, scalar
from .ideals import EquigeneratedIdeal, GradedIdeal, PowerIdeal
from .polyring import HomogeneousForm, LinearForm, RingContext, power_of_linear

TOP_LEVEL_KEYS = {"variables", "field", "seed", "generators", "arrangement", "arrangement_power", "points", "options", "name"}
BUILTIN_PREFIX = "builtin:"


class DocumentError(InputError):
    def __init__(self, message: str, where: str = "", line: int | None = None):
        location = where
        if line is not None:
            location = f"line {line}" + (f", field {where}" if where else "")
        super().__init__(f"{location}: {message}" if location else message)
        self.where = where
        self.line = line


def _node_lines(node, path="", out=None) -> dict:
    """Map from field path to 1-based source line, built from the composed YAML tree."""
    out = {} if out is None else out
    if node is None:
        return out
    out[path] = node.start_mark.line + 1
    if isinstance(node, yaml.MappingNode):
        for key, value in node.value:
            name = f"{path}.{key.value}" if path else str(key.value)
            _node_lines(value, name, out)
    elif isinstance(node, yaml.SequenceNode):
        for idx, value in enumerate(node.value):
            _node_lines(value, f"{path}[{idx}]", out)
    return out


@dataclass
class InputDocument:
    variables: int
    field: PrimeField | None
    seed: int | None
    generators: tuple = ()
    arrangement: tuple = ()
    points: tuple = ()
    options: dict = field(default_factory=dict)
    name: str = ""
    digest: str = ""

    def option(self, command: str, key: str, default=None):
        return self.options.get(command, {}).get(key, default)

    @property
    def ctx(self) -> RingContext:
        return RingContext(self.variables)

    def ideal(self) -> GradedIdeal:
        """The ideal described by ``generators`` (or by ``arrangement_power``)."""
        if not self.generators:
            raise InputError("this command needs generators (or an arrangement with arrangement_power)")
        gens = self.generators
        if all(kind == "power" for kind, *_ in gens):
            forms = [g[1] for g in gens]
            exps = [g[2] for g in gens]
            I = PowerIdeal.build(forms, exps)
            return I.equigenerated() if len(set(exps)) == 1 else I
        forms = tuple(power_of_linear(g[1], g[2]) if g[0] == "power" else g[1] for g in gens)
        if len({f.degree for f in forms}) == 1:
            return EquigeneratedIdeal(self.ctx, forms)
        return GradedIdeal(self.ctx, forms)

    def equigenerated_ideal(self) -> EquigeneratedIdeal:
        I = self.ideal()
        if not isinstance(I, EquigeneratedIdeal):
            raise InputError("this command needs all generators in one degree")
        return I

    def power_ideal(self) -> PowerIdeal:
        I = self.ideal()
        if not getattr(I, "linear_forms", ()):
            raise InputError("this command needs generators given as powers of linear forms")
        return I

    def linear_forms(self) -> list[LinearForm]:
        """Forms whose dual points are studied: arrangement lines, else power-generator bases."""
        if self.arrangement:
            return list(self.arrangement)
        if self.generators and all(kind == "power" for kind, *_ in self.generators):
            return [g[1] for g in self.generators]
        raise InputError("this command needs an arrangement or generators given as powers of linear forms")

    def point_set(self) -> list[tuple]:
        if self.points:
            return list(self.points)
        return [L.coeffs for L in self.linear_forms()]


class _Parser:
    def __init__(self, text: str, source: str):
        try:
            self.node = yaml.compose(text)
            data = yaml.safe_load(text)
        except yaml.MarkedYAMLError as exc:
            mark = exc.problem_mark
            raise DocumentError(str(exc.problem), source, mark.line + 1 if mark else None) from None
        except yaml.YAMLError as exc:
            raise DocumentError(str(exc), source) from None
        self.lines = _node_lines(self.node)
        self.data = data

    def fail(self, where: str, message: str):
        line = self.lines.get(where)
        if line is None:
            # nearest enclosing field that has a recorded line
            parent = where
            while parent and parent not in self.lines:
                parent = parent.rsplit(".", 1)[0].rsplit("[", 1)[0] if ("." in parent or "[" in parent) else ""
            line = self.lines.get(parent)
        raise DocumentError(message, where, line)

    def nat(self, value, where: str, minimum: int = 0) -> int:
        if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
            self.fail(where, f"expected an integer >= {minimum}, got {value!r}")
        return value

    def rational(self, value, where: str):
        if isinstance(value, bool):
            self.fail(where, f"expected a rational number, got {value!r}")
        try:
            return scalar(value)
        except (InputError, ValueError, TypeError, ZeroDivisionError) as exc:
            self.fail(where, f"not an exact rational: {value!r} ({exc})")

    def vector(self, value, where: str, length: int) -> tuple:
        if not isinstance(value, list):
            self.fail(where, "expected a list of coefficients")
        if len(value) != length:
            self.fail(where, f"expected {length} coefficients, got {len(value)}")
        return tuple(self.rational(v, f"{where}[{j}]") for j, v in enumerate(value))

    def linear_form(self, value, where: str, n: int) -> LinearForm:
        coeffs = self.vector(value, where, n)
        if not any(coeffs):
            self.fail(where, "the zero form is not allowed")
        return LinearForm(coeffs)

    def generator(self, g, where: str, n: int):
        if not isinstance(g, dict):
            self.fail(where, "a generator is a mapping with coeffs/power, monomial or terms")
        kinds = [key for key in ("coeffs", "monomial", "terms") if key in g]
        if len(kinds) != 1:
            self.fail(where, "give exactly one of coeffs (with power), monomial, terms")
        kind = kinds[0]
        extra = set(g) - {"coeffs", "power", "monomial", "terms"}
        if extra:
            self.fail(f"{where}.{sorted(extra)[0]}", "unknown generator field")
        if kind == "coeffs":
            if "power" not in g:
                self.fail(where, "coeffs needs a power")
            L = self.linear_form(g["coeffs"], f"{where}.coeffs", n)
            power = self.nat(g["power"], f"{where}.power", 1)
            return ("power", L, power)
        if "power" in g:
            self.fail(f"{where}.power", "power only goes with coeffs")
        if kind == "monomial":
            exps = g["monomial"]
            if not isinstance(exps, list) or len(exps) != n:
                self.fail(f"{where}.monomial", f"expected {n} exponents")
            exps = tuple(self.nat(e, f"{where}.monomial[{j}]") for j, e in enumerate(exps))
            if sum(exps) == 0:
                self.fail(f"{where}.monomial", "a generator of degree 0 generates the unit ideal")
            return ("form", HomogeneousForm.monomial(exps))
        terms = g["terms"]
        if not isinstance(terms, list) or not terms:
            self.fail(f"{where}.terms", "expected a nonempty list of terms")
        parsed = []
        for j, term in enumerate(terms):
            tw = f"{where}.terms[{j}]"
            if not isinstance(term, dict) or set(term) != {"coeff", "exponents"}:
                self.fail(tw, "a term is {coeff, exponents}")
            exps = term["exponents"]
            if not isinstance(exps, list) or len(exps) != n:
                self.fail(f"{tw}.exponents", f"expected {n} exponents")
            exps = tuple(self.nat(e, f"{tw}.exponents[{m}]") for m, e in enumerate(exps))
            parsed.append((exps, self.rational(term["coeff"], f"{tw}.coeff")))
        if len({sum(e) for e, _ in parsed}) != 1:
            self.fail(f"{where}.terms", "terms must be homogeneous of one degree")
        combined = {}
        for exps, c in parsed:
            combined[exps] = combined.get(exps, 0) + c
        try:
            form = HomogeneousForm.from_terms(n, combined)
        except LefarrError as exc:
            self.fail(f"{where}.terms", str(exc))
        if form.is_zero() or form.degree == 0:
            self.fail(f"{where}.terms", "generator must be a nonzero form of positive degree")
        return ("form", form)

    def document(self, name: str) -> InputDocument:
        data = self.data
        if not isinstance(data, dict):
            raise DocumentError("the document must be a mapping", "", 1)
        unknown = set(data) - TOP_LEVEL_KEYS
        if unknown:
            self.fail(sorted(unknown)[0], "unknown top-level field")
        if "variables" not in data:
            raise DocumentError("missing required field 'variables'", "variables", 1)
        n = self.nat(data["variables"], "variables", 2)
        prime = None
        fld = data.get("field", "rational")
        if isinstance(fld, dict) and set(fld) == {"prime"}:
            p = self.nat(fld["prime"], "field.prime", 2)
            try:
                prime = PrimeField(p)
            except LefarrError as exc:
                self.fail("field.prime", str(exc))
        elif fld != "rational":
            self.fail("field", "field is 'rational' or {prime: p}")
        seed = data.get("seed")
        if seed is not None:
            seed = self.nat(seed, "seed")
        gens = []
        raw = data.get("generators")
        if raw is not None:
            if not isinstance(raw, list) or not raw:
                self.fail("generators", "expected a nonempty list of generators")
            gens = [self.generator(g, f"generators[{j}]", n) for j, g in enumerate(raw)]
        arrangement = []
        raw = data.get("arrangement")
        if raw is not None:
            if n != 3:
                self.fail("arrangement", "arrangements are lines in the plane; set variables: 3")
            if not isinstance(raw, list):
                self.fail("arrangement", "expected a list of lines")
            arrangement = [self.linear_form(L, f"arrangement[{j}]", n) for j, L in enumerate(raw)]
        if "arrangement_power" in data:
            if not arrangement:
                self.fail("arrangement_power", "arrangement_power needs an arrangement")
            if gens:
                self.fail("arrangement_power", "give either generators or arrangement_power, not both")
            power = self.nat(data["arrangement_power"], "arrangement_power", 1)
            gens = [("power", L, power) for L in arrangement]
        points = []
        raw = data.get("points")
        if raw is not None:
            if not isinstance(raw, list) or not raw:
                self.fail("points", "expected a nonempty list of points")
            for j, p in enumerate(raw):
                vec = self.vector(p, f"points[{j}]", n)
                if not any(vec):
                    self.fail(f"points[{j}]", "the zero vector is not a point")
                points.append(vec)
        options = data.get("options", {}) or {}
        if not isinstance(options, dict) or not all(isinstance(v, dict) for v in options.values()):
            self.fail("options", "options maps command names to mappings")
        return InputDocument(n, prime, seed, tuple(gens), tuple(arrangement), tuple(points), options,
                             str(data.get("name", name)))


def builtin_fixtures() -> list[str]:
    root = resources.files("lefarr") / "fixtures"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".yaml"))


def read_source(source: str) -> tuple[str, str]:
    """(text, display name) for a path or ``builtin:NAME``."""
    if source.startswith(BUILTIN_PREFIX):
        name = source[len(BUILTIN_PREFIX):]
        if name not in builtin_fixtures():
            raise InputError(f"no builtin fixture {name!r}; available: {', '.join(builtin_fixtures())}")
        return (resources.files("lefarr") / "fixtures" / f"{name}.yaml").read_text(encoding="utf-8"), name
    path = Path(source)
    try:
        return path.read_text(encoding="utf-8"), path.stem
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}") from None


def parse_document(text: str, name: str = "input") -> InputDocument:
    doc = _Parser(text, name).document(name)
    doc.digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
    return doc


def load_document(source: str) -> InputDocument:
    text, name = read_source(source)
    return parse_document(text, name)


def to_jsonable(value):
    """Exact values become ints or "p/q" strings; tuples become lists; keys become strings.

    Floats only appear in plot descriptions.
    """
    if isinstance(value, (bool, str, float)) or value is None:
        return value
    if isinstance(value, int):
        return int(value)
    if isinstance(value, Fraction):
        return format_scalar(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if hasattr(value, "as_dict"):
        return to_jsonable(value.as_dict())
    raise TypeError(f"cannot serialize {type(value).__name__}")


def dump_report(report: dict) -> str:
    return json.dumps(to_jsonable(report), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def load_report(text: str) -> dict:
    return json.loads(text)


def _flatten(value, prefix=""):
    if isinstance(value, dict):
        for key in sorted(value):
            yield from _flatten(value[key], f"{prefix}.{key}" if prefix else str(key))
    elif isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value):
        for idx, item in enumerate(value):
            yield from _flatten(item, f"{prefix}[{idx}]")
    else:
        yield prefix, value


def render_table(report: dict) -> str:
    rows = list(_flatten(to_jsonable(report)))
    width = max((len(k) for k, _ in rows), default=0)
    return "".join(f"{key:<{width}}  {json.dumps(val, ensure_ascii=False)}\n" for key, val in rows)
