"""A small block-structured text format for fixtures.

A document is a sequence of blocks. Each block starts with a header line
``[name]`` and contains ``key = value ...`` settings and directive rows
whose first token names the directive::

    [category]
    kind = table
    objects = 0 1
    morphism e : 0 -> 1

Tokens are separated by whitespace and ``#`` starts a comment. The printer
emits one entry per line with single spaces and one blank line between
blocks, so ``print_doc(parse(t))`` is a fixpoint of parse-then-print.
"""
from __future__ import annotations

from dataclasses import dataclass, field


class ParseError(Exception):
    def __init__(self, msg, line=0, col=0):
        self.msg, self.line, self.col = msg, line, col
        super().__init__(f"{line}:{col}: {msg}" if line else msg)


@dataclass
class Token:
    text: str
    line: int
    col: int

    def __str__(self):
        return self.text

    @property
    def where(self):
        return f"{self.line}:{self.col}"


@dataclass
class Entry:
    head: Token
    args: list
    kv: bool

    @property
    def key(self):
        return self.head.text

    @property
    def values(self):
        return [t.text for t in self.args]

    def render(self):
        parts = [self.key] + (["="] if self.kv else []) + self.values
        return " ".join(parts)


@dataclass
class Block:
    name: str
    line: int
    entries: list = field(default_factory=list)

    def settings(self):
        return {e.key: e for e in self.entries if e.kv}

    def get(self, key, default=None):
        e = self.settings().get(key)
        return default if e is None else " ".join(e.values)

    def get_int(self, key, default=None):
        e = self.settings().get(key)
        if e is None:
            return default
        return _int(e.args[0]) if len(e.args) == 1 else _bad(e.head, f"{key} takes one integer")

    def get_list(self, key, default=None):
        e = self.settings().get(key)
        return default if e is None else e.values

    def rows(self, head=None):
        return [e for e in self.entries if not e.kv and (head is None or e.key == head)]


@dataclass
class SpecDocument:
    blocks: list = field(default_factory=list)
    table: object = None     # resolved TableSpec of a table [category]

    def block(self, name):
        for b in self.blocks:
            if b.name == name:
                return b
        return None

    def __contains__(self, name):
        return self.block(name) is not None


def _bad(tok, msg):
    raise ParseError(msg, tok.line, tok.col)


def _int(tok):
    try:
        return int(tok.text)
    except ValueError:
        _bad(tok, f"expected an integer, got {tok.text!r}")


# ---------------------------------------------------------------- syntax

def _tokens(line, lineno):
    out, i = [], 0
    while i < len(line):
        if line[i].isspace():
            i += 1
            continue
        j = i
        while j < len(line) and not line[j].isspace():
            j += 1
        out.append(Token(line[i:j], lineno, i + 1))
        i = j
    return out


def _strip_comment(line):
    k = line.find("#")
    return line if k < 0 else line[:k]


def parse_syntax(text: str) -> SpecDocument:
    doc = SpecDocument()
    cur = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = _tokens(_strip_comment(raw), lineno)
        if not toks:
            continue
        first = toks[0]
        if first.text.startswith("["):
            if len(toks) != 1 or not first.text.endswith("]") or len(first.text) < 3:
                _bad(first, "malformed block header")
            name = first.text[1:-1]
            if name not in BLOCKS:
                _bad(first, f"unknown block [{name}]")
            prev = doc.block(name)
            if prev is not None:
                _bad(first, f"duplicate block [{name}] (first at line {prev.line})")
            cur = Block(name, lineno)
            doc.blocks.append(cur)
            continue
        if cur is None:
            _bad(first, "entry outside of any block")
        if len(toks) >= 2 and toks[1].text == "=":
            if first.text in cur.settings():
                old = cur.settings()[first.text].head
                _bad(first, f"duplicate key {first.text!r} (first at {old.where})")
            if len(toks) == 2:
                _bad(toks[1], f"missing value for {first.text!r}")
            cur.entries.append(Entry(first, toks[2:], True))
        else:
            cur.entries.append(Entry(first, toks[1:], False))
    return doc


def print_doc(doc: SpecDocument) -> str:
    chunks = []
    for b in doc.blocks:
        chunks.append("\n".join([f"[{b.name}]"] + [e.render() for e in b.entries]))
    return "\n\n".join(chunks) + ("\n" if chunks else "")


def normalize(text: str) -> str:
    """Line-level normal form, computed without parsing."""
    lines = []
    for raw in text.splitlines():
        words = _strip_comment(raw).split()
        if not words:
            continue
        if words[0].startswith("[") and lines:
            lines.append("")
        lines.append(" ".join(words))
    return "\n".join(lines) + ("\n" if lines else "")


# ---------------------------------------------------------------- semantics

KINDS = {
    "category": {"kind": ("table", "skeletal")},
    "products": {"mode": ("canonical", "swapped")},
    "pullbacks": {"mode": ("canonical", "lexicographic", "sigma")},
    "ccc": {"mode": ("canonical",)},
    "lcc": {"mode": ("canonical",)},
    "csystem": {"source": ("cc", "table")},
    "ucf": {"kind": ("identity", "inclusion"), "twist": ("true", "false")},
    "fault": {"kind": ("unit-law", "q-square", "phit-pullback", "sig-naturality",
                       "u1-naturality")},
}

BLOCKS = {
    "category": ({"name", "kind", "bound", "objects", "terminal"},
                 {"morphism", "identity", "compose"}),
    "finset": ({"K", "max_card"}, set()),
    "universe": ({"sizes", "U", "Ut", "p"}, {"comprehension"}),
    "products": ({"mode"}, {"product"}),
    "pullbacks": ({"mode"}, {"pullback"}),
    "ccc": ({"mode"}, {"hom"}),
    "lcc": ({"mode"}, set()),
    "csystem": ({"source", "truncation", "max_card", "pt"}, {"object", "subst"}),
    "ucf": ({"kind", "twist", "target_K", "target_sizes"}, set()),
    "fault": ({"kind", "seed"}, set()),
    "suite": ({"n", "truncation", "depth"}, {"check"}),
}

INT_KEYS = {"bound", "K", "max_card", "truncation", "n", "depth", "seed", "target_K"}
INT_LIST_KEYS = {"sizes", "target_sizes"}


def _expect(e: Entry, shape: str):
    """Match a row against a shape like ``ID : ID -> ID``; returns the ID tokens."""
    want = shape.split()
    if len(e.args) != len(want):
        _bad(e.head, f"{e.key} row must read '{e.key} {shape}'")
    ids = []
    for tok, w in zip(e.args, want):
        if w == "ID":
            ids.append(tok)
        elif tok.text != w:
            _bad(tok, f"expected {w!r}, got {tok.text!r}")
    return ids


class _Names:
    def __init__(self, what):
        self.what = what
        self.seen = {}

    def add(self, tok):
        old = self.seen.get(tok.text)
        if old is not None:
            raise ParseError(f"duplicate {self.what} id {tok.text!r} at {old.where} and {tok.where}",
                             tok.line, tok.col)
        self.seen[tok.text] = tok

    def need(self, tok):
        if tok.text not in self.seen:
            _bad(tok, f"unresolved {self.what} id {tok.text!r}")
        return tok.text

    def __iter__(self):
        return iter(self.seen)


@dataclass
class TableSpec:
    """Resolved data of a ``kind = table`` category block."""
    name: str
    objects: list
    morphisms: dict        # id -> (dom, cod)
    identities: dict       # object -> id
    composition: dict      # (f, g) -> h
    terminal: object = None


def _check_block_keys(b: Block):
    keys, rows = BLOCKS[b.name]
    for e in b.entries:
        if e.kv:
            if e.key not in keys:
                _bad(e.head, f"unknown key {e.key!r} in [{b.name}]")
            allowed = KINDS.get(b.name, {}).get(e.key)
            if allowed and (len(e.args) != 1 or e.args[0].text not in allowed):
                _bad(e.args[0], f"{e.key} must be one of {', '.join(allowed)}")
            if e.key in INT_KEYS:
                if len(e.args) != 1:
                    _bad(e.head, f"{e.key} takes one integer")
                _int(e.args[0])
            if e.key in INT_LIST_KEYS:
                for t in e.args:
                    _int(t)
        elif e.key not in rows:
            _bad(e.head, f"unknown directive {e.key!r} in [{b.name}]")


def resolve_table_category(b: Block) -> TableSpec:
    objs = _Names("object")
    oe = b.settings().get("objects")
    if oe is None:
        _bad(Token("", b.line, 1), "table category needs 'objects = ...'")
    for t in oe.args:
        objs.add(t)
    mors = _Names("morphism")
    morphisms, identities = {}, {}
    for e in b.rows("morphism"):
        m, A, B = _expect(e, "ID : ID -> ID")
        mors.add(m)
        morphisms[m.text] = (objs.need(A), objs.need(B))
    for e in b.rows("identity"):
        A, m = _expect(e, "ID = ID")
        A_, m_ = objs.need(A), mors.need(m)
        if morphisms[m_] != (A_, A_):
            _bad(m, f"identity {m_!r} is not an endomorphism of {A_!r}")
        if A_ in identities:
            _bad(A, f"second identity for {A_!r}")
        identities[A_] = m_
    for A in objs:
        if A not in identities:
            ident = f"id.{A}"
            if ident in morphisms:
                raise ParseError(f"object {A!r} has no identity row and {ident!r} is taken",
                                 b.line, 1)
            identities[A] = ident
            morphisms[ident] = (A, A)
    comp = {}
    where = {}
    for e in b.rows("compose"):
        f, g, h = _expect(e, "ID ID = ID")
        ids = set(identities.values())
        f_, g_, h_ = (t.text if t.text in ids else mors.need(t) for t in (f, g, h))
        if morphisms[f_][1] != morphisms[g_][0]:
            _bad(g, f"{f_!r} and {g_!r} are not composable")
        if morphisms[h_] != (morphisms[f_][0], morphisms[g_][1]):
            _bad(h, f"{h_!r} has the wrong type for {f_};{g_}")
        if (f_, g_) in comp:
            raise ParseError(f"duplicate composition {f_};{g_} at {where[(f_, g_)]} and {f.where}",
                             f.line, f.col)
        comp[(f_, g_)] = h_
        where[(f_, g_)] = f.where
    for m, (A, B) in morphisms.items():
        comp.setdefault((identities[A], m), m)
        comp.setdefault((m, identities[B]), m)
    for f, (A, B) in sorted(morphisms.items()):
        for g, (B2, C) in sorted(morphisms.items()):
            if B2 == B and (f, g) not in comp:
                raise ParseError(f"non-total composition table: no entry for {f};{g}", b.line, 1)
    term = b.settings().get("terminal")
    terminal = objs.need(term.args[0]) if term is not None else None
    return TableSpec(b.get("name", "C"), list(objs), morphisms, identities, comp, terminal)


def _check_rows_resolve(b: Block, spec: TableSpec, shapes):
    """Every ID in the named rows must be an object or morphism of the table category."""
    known = set(spec.objects) | set(spec.morphisms)
    for head, shape in shapes.items():
        for e in b.rows(head):
            for t in _expect(e, shape):
                if t.text not in known and not t.text.lstrip("-").isdigit():
                    _bad(t, f"unresolved id {t.text!r}")
    for key, e in b.settings().items():
        if key in ("U", "Ut", "p", "pt"):
            for t in e.args:
                if t.text not in known:
                    _bad(t, f"unresolved id {t.text!r}")


def validate(doc: SpecDocument) -> SpecDocument:
    for b in doc.blocks:
        _check_block_keys(b)
    cat = doc.block("category")
    fin = doc.block("finset")
    if cat is not None and fin is not None:
        raise ParseError("a document has either [category] or [finset], not both", fin.line, 1)
    spec = None
    if cat is not None:
        kind = cat.get("kind", "table")
        if kind == "table":
            spec = resolve_table_category(cat)
            doc.table = spec
        else:
            if cat.rows():
                _bad(cat.rows()[0].head, "a skeletal category takes no table rows")
    shapes = {"universe": {"comprehension": "ID = ID ID ID"},
              "products": {"product": "ID ID = ID ID ID"},
              "pullbacks": {"pullback": "ID ID = ID ID ID"},
              "ccc": {"hom": "ID ID = ID ID"},
              "csystem": {"object": "ID ID ID ID", "subst": "ID ID = ID ID"}}
    for name, sh in shapes.items():
        b = doc.block(name)
        if b is None:
            continue
        has_rows = bool(b.rows())
        if has_rows and spec is None:
            _bad(b.rows()[0].head, f"[{name}] tables need a table [category]")
        if spec is not None:
            _check_rows_resolve(b, spec, sh)
    u = doc.block("universe")
    if u is not None:
        explicit = any(k in u.settings() for k in ("U", "Ut", "p"))
        if explicit and "sizes" in u.settings():
            _bad(u.settings()["sizes"].head, "give either sizes or U/Ut/p")
        if not explicit and "sizes" not in u.settings():
            raise ParseError("[universe] needs sizes or U/Ut/p", u.line, 1)
        if explicit and spec is None:
            raise ParseError("explicit universes need a table [category]", u.line, 1)
        if explicit:
            st = u.settings()
            for k in ("U", "Ut", "p"):
                if k not in st:
                    raise ParseError(f"[universe] needs {k} alongside the other explicit keys",
                                     u.line, 1)
            pe = st["p"].args[0]
            if spec.morphisms.get(pe.text) != (u.get("Ut"), u.get("U")):
                _bad(pe, f"p must be a morphism Ut -> U ({u.get('Ut')} -> {u.get('U')})")
    for name in ("csystem", "ucf", "suite", "lcc", "ccc"):
        b = doc.block(name)
        if b is not None and u is None and name in ("csystem", "ucf"):
            if name == "ucf" or b.get("source", "cc") == "cc":
                raise ParseError(f"[{name}] needs a [universe] block", b.line, 1)
    s = doc.block("suite")
    if s is not None:
        for e in s.rows("check"):
            if not e.args:
                _bad(e.head, "check row needs a name")
            for t in e.args[1:]:
                k, eq, v = t.text.partition("=")
                if not eq or k not in ("n", "truncation", "depth") or not v.lstrip("-").isdigit():
                    _bad(t, f"bad check parameter {t.text!r}")
    return doc


def parse(text: str) -> SpecDocument:
    """Parse and validate; raises :class:`ParseError` with line and column."""
    return validate(parse_syntax(text))
