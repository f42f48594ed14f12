"""Fact file reader/writer and the in-memory fact base.

A fact file holds one block per record:

    <type> <code> { <field>=<value> ... }

Values are double-quoted strings, bare integers, bare enum tokens, bare code
references, `true`/`false`, string lists `["a", "b"]` or attribute pairs
`[size:"small"]`. `#` starts a comment.
"""
import logging
import re
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedInput

from .exceptions import (AmbiguousCode, DanglingReference, DuplicateCode, ParseError, RecordNotFound,
                         UnknownVerb)
from .models import (ACTION_CODES, COMM_KINDS, ActionFact, CommFact, EntityKind, EntityRecord,
                     EventFact, PersonRecord, PlaceRecord, PredicateKind, Ref, SemanticCode,
                     TimeRecord, classify_code, classify_verb, fold)

logger = logging.getLogger(__name__)

GRAMMAR = r"""
start: block*
block: TYPE NAME "{" assignment* "}"
assignment: NAME "=" value

value: ESCAPED_STRING        -> string
     | SIGNED_INT            -> integer
     | NAME                  -> bare
     | "[" "]"               -> listing
     | "[" item ("," item)* "]" -> listing

item: NAME ":" ESCAPED_STRING -> pair
    | ESCAPED_STRING          -> string

TYPE: "person" | "place" | "time" | "organization" | "thing" | "machine"
    | "action" | "event" | "job" | "message" | "intelligence"
NAME: /[A-Za-z_][A-Za-z0-9_-]*/

COMMENT: /#[^\n]*/
%import common.ESCAPED_STRING
%import common.SIGNED_INT
%import common.WS
%ignore WS
%ignore COMMENT
"""

_parser = Lark(GRAMMAR, parser='lalr')

# block type -> (namespace, record class)
BLOCK_TYPES = {
    'person': ('person', PersonRecord),
    'place': ('place', PlaceRecord),
    'time': ('time', TimeRecord),
    'organization': ('entity', EntityRecord),
    'thing': ('entity', EntityRecord),
    'machine': ('entity', EntityRecord),
    'action': ('fact', ActionFact),
    'event': ('fact', EventFact),
    'job': ('fact', CommFact),
    'message': ('fact', CommFact),
    'intelligence': ('fact', CommFact),
}

NAMESPACES = ('person', 'entity', 'place', 'time', 'fact')


# ==========
# FACT BASE
# ==========

@dataclass(frozen=True)
class FactBase:
    """Validated, immutable collection of records and facts.

    Records are indexed by code per namespace; facts keep file order.
    `source_order` maps (namespace, code) to the ingestion sequence number.
    """
    persons: dict = field(default_factory=dict)
    places: dict = field(default_factory=dict)
    times: dict = field(default_factory=dict)
    entities: dict = field(default_factory=dict)
    actions: tuple = ()
    events: tuple = ()
    comms: tuple = ()
    source_order: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.actions) + len(self.events) + len(self.comms)

    def namespace(self, name):
        if name == 'fact':
            return self.facts_by_code
        return {
            'person': self.persons,
            'entity': self.entities,
            'place': self.places,
            'time': self.times,
        }[name]

    @cached_property
    def facts_by_code(self):
        return {fact.code: fact for fact in self.all_facts()}

    def all_facts(self):
        """Every fact, in file order."""
        facts = [*self.actions, *self.events, *self.comms]
        # facts built in code follow the loaded ones, in the order given
        unknown = len(self.source_order)
        order = [self.source_order.get(('fact', fact.code), unknown + index)
                 for index, fact in enumerate(facts)]
        return [fact for _, fact in sorted(zip(order, facts), key=lambda pair: pair[0])]

    def entity(self, code):
        """Person, organization, thing or machine behind an entity reference."""
        if code in self.persons:
            return self.persons[code]
        if code in self.entities:
            return self.entities[code]
        raise RecordNotFound(f"no person, organization, thing or machine '{code}'")

    @cached_property
    def _action_index(self):
        index = {}
        for action in self.actions:
            key = (action.semantic_type, action.negation, action.tense, action.tense_type)
            index.setdefault(key, []).append(action)
        return {key: tuple(facts) for key, facts in index.items()}


def resolve(fb, code, namespace=None):
    """Record with `code`. Without a namespace the code must be defined in
    exactly one."""
    if namespace:
        records = fb.namespace(namespace)
        if code in records:
            return records[code]
    else:
        found = [name for name in NAMESPACES if code in fb.namespace(name)]
        if len(found) > 1:
            raise AmbiguousCode(code, found)
        if found:
            return fb.namespace(found[0])[code]
    where = f" in namespace '{namespace}'" if namespace else ''
    raise RecordNotFound(f"no record '{code}'{where}")


def select_actions(fb, semantic_type, negation, tense, tense_type):
    if semantic_type not in ACTION_CODES:
        raise ValueError(f"{semantic_type} does not form an action predicate")
    return list(fb._action_index.get((semantic_type, negation, tense, tense_type), ()))


def select_events_by_scale(fb, scale):
    wanted = fold(scale)
    return [event for event in fb.events if fold(event.scale) == wanted]


def select_all_events(fb):
    return list(fb.events)


def select_comms(fb, kind):
    if kind not in COMM_KINDS:
        raise ValueError(f"{kind} is not a job, message or intelligence kind")
    return [comm for comm in fb.comms if comm.kind == kind]


# ===========
# THE READER
# ===========

def _unescape(token):
    return re.sub(r'\\(.)', r'\1', token[1:-1])


@v_args(inline=True)
class _BlockTransformer(Transformer):
    """Parse tree -> (type, code, [(name, (value kind, value, token))])."""

    def string(self, token):
        return ('string', _unescape(token), token)

    def integer(self, token):
        return ('int', int(token), token)

    def bare(self, token):
        return ('bare', str(token), token)

    def listing(self, *items):
        return ('list', list(items), items[0][2] if items else None)

    def pair(self, name, token):
        return ('pair', (str(name), _unescape(token)), name)

    def assignment(self, name, value):
        return (name, value)

    def block(self, type_token, code_token, *assignments):
        return (type_token, code_token, list(assignments))

    def start(self, *blocks):
        return list(blocks)


class _Builder:
    def __init__(self, path, lexicon=None):
        self.path = path
        self.lexicon = lexicon
        self.codes = {name: {} for name in NAMESPACES}
        self.records = {name: {} for name in NAMESPACES}
        self.order = {}

    def fail(self, token, message):
        raise ParseError.at(token, message, self.path)

    # pass 1: codes and duplicates
    def register(self, type_token, code_token):
        namespace = BLOCK_TYPES[str(type_token)][0]
        code = str(code_token)
        if code in self.codes[namespace]:
            first = self.codes[namespace][code]
            raise DuplicateCode.at(
                code_token,
                f"duplicate {namespace} code '{code}' (first defined at line {first.line})",
                self.path,
            )
        self.codes[namespace][code] = code_token
        self.order[(namespace, code)] = len(self.order)

    # pass 2: field values
    def check_ref(self, token, code, namespace):
        if namespace != 'entity':
            if code not in self.codes[namespace]:
                raise DanglingReference(code, token.line, token.column, self.path, namespace)
            return code
        in_person, in_entity = code in self.codes['person'], code in self.codes['entity']
        if in_person and in_entity:
            self.fail(token, f"ambiguous reference '{code}': both a person and an entity")
        if not (in_person or in_entity):
            raise DanglingReference(code, token.line, token.column, self.path, 'entity')
        return code

    def convert(self, name, meta, value):
        kind, raw, token = value
        field_kind = meta['kind']
        if field_kind == 'text' and kind in ('string', 'bare'):
            return raw
        if field_kind == 'int' and kind == 'int':
            return raw
        if field_kind == 'bool' and kind == 'bare' and raw in ('true', 'false'):
            return raw == 'true'
        if field_kind == 'enum' and kind in ('string', 'bare'):
            try:
                return meta['choices'](raw.lower())
            except ValueError:
                self.fail(token, f"'{raw}' is not a valid {name}")
        if field_kind == 'semcode' and kind == 'bare':
            try:
                code = SemanticCode(raw.upper())
            except ValueError:
                self.fail(token, f"unknown semantic code '{raw}'")
            if code not in ACTION_CODES:
                self.fail(token, f"{code} does not form an action predicate")
            return code
        if field_kind == 'ref' and kind == 'bare':
            return self.check_ref(token, raw, meta['namespace'])
        if field_kind == 'object' and kind == 'bare':
            return Ref(self.check_ref(token, raw, 'entity'))
        if field_kind == 'object' and kind == 'string':
            return raw
        if field_kind == 'texts' and kind == 'list' and all(item[0] == 'string' for item in raw):
            return tuple(item[1] for item in raw)
        if field_kind == 'pairs' and kind == 'list' and all(item[0] == 'pair' for item in raw):
            return tuple(item[1] for item in raw)
        self.fail(token, f"invalid value for field '{name}'")

    def build(self, type_token, code_token, assignments):
        block_type = str(type_token)
        namespace, record_class = BLOCK_TYPES[block_type]
        schema = record_class.schema()
        keys = {meta.get('key', name): name for name, meta in schema.items()
                if meta['kind'] not in ('entity_kind', 'comm_kind')}
        values = {'code': str(code_token)}
        if record_class is EntityRecord:
            values['kind'] = EntityKind(block_type)
        elif record_class is CommFact:
            values['kind'] = PredicateKind(block_type.upper())

        for name_token, value in assignments:
            key = str(name_token)
            if key not in keys:
                self.fail(name_token, f"unknown field '{key}' for {block_type}")
            name = keys[key]
            if name in values:
                self.fail(name_token, f"field '{key}' given twice")
            values[name] = self.convert(key, schema[name], value)

        for name, meta in schema.items():
            if meta.get('required') and values.get(name) is None:
                self.fail(code_token, f"{block_type} '{code_token}' lacks required field '{meta.get('key', name)}'")
        try:
            record = record_class(**values)
        except ValueError as error:
            self.fail(code_token, str(error))
        if self.lexicon is not None and namespace == 'fact':
            self.check_verb(record, code_token)
        self.records[namespace][record.code] = record

    def check_verb(self, fact, token):
        try:
            code = classify_verb(fact.verb, self.lexicon)
        except UnknownVerb as error:
            self.fail(token, str(error))
        expected = {
            ActionFact: lambda: code == fact.semantic_type,
            EventFact: lambda: code == SemanticCode.CHANGE,
            CommFact: lambda: classify_code(code) == fact.kind,
        }[type(fact)]
        if not expected():
            self.fail(token, f"verb '{fact.verb}' is classified {code}, which does not form this predicate")

    def fact_base(self):
        facts = self.records['fact'].values()
        return FactBase(
            persons=self.records['person'],
            places=self.records['place'],
            times=self.records['time'],
            entities=self.records['entity'],
            actions=tuple(f for f in facts if isinstance(f, ActionFact)),
            events=tuple(f for f in facts if isinstance(f, EventFact)),
            comms=tuple(f for f in facts if isinstance(f, CommFact)),
            source_order=self.order,
        )


def parse_facts(text, path=None, lexicon=None):
    try:
        tree = _parser.parse(text)
    except UnexpectedInput as error:
        raise ParseError.from_lark(error, path) from None
    blocks = _BlockTransformer().transform(tree)
    builder = _Builder(path, lexicon)
    for type_token, code_token, _ in blocks:
        builder.register(type_token, code_token)
    for block in blocks:
        builder.build(*block)
    return builder.fact_base()


def load_facts(path, lexicon=None):
    """Read and validate a fact file. With a lexicon, fact verbs are checked
    against their predicate type as well."""
    path = Path(path)
    fb = parse_facts(path.read_text(encoding='utf-8'), str(path), lexicon)
    logger.info(
        'facts loaded',
        extra={'path': str(path), 'facts': len(fb), 'persons': len(fb.persons),
               'places': len(fb.places), 'times': len(fb.times), 'entities': len(fb.entities)},
    )
    return fb


# ===========
# THE WRITER
# ===========

def _quote(text):
    return '"' + str(text).replace('\\', '\\\\').replace('"', '\\"') + '"'


def _render_value(meta, value):
    kind = meta['kind']
    if kind == 'text':
        return _quote(value)
    if kind == 'bool':
        return 'true' if value else 'false'
    if kind in ('int', 'ref', 'enum', 'semcode'):
        return str(value)
    if kind == 'object':
        return str(value) if isinstance(value, Ref) else _quote(value)
    if kind == 'texts':
        return '[' + ', '.join(_quote(item) for item in value) + ']'
    if kind == 'pairs':
        return '[' + ', '.join(f'{attr}:{_quote(text)}' for attr, text in value) + ']'
    raise ValueError(f"cannot render field kind {kind}")


def _block_type(record):
    if isinstance(record, EntityRecord):
        return str(record.kind)
    if isinstance(record, CommFact):
        return str(record.kind).lower()
    for block_type, (_, record_class) in BLOCK_TYPES.items():
        if isinstance(record, record_class):
            return block_type


def dump_facts(fb):
    """Serialize a fact base back into the block format, in source order."""
    entries = []
    for namespace in NAMESPACES:
        for code, record in fb.namespace(namespace).items():
            entries.append((fb.source_order.get((namespace, code), len(fb.source_order)), record))
    lines = []
    for _, record in sorted(entries, key=lambda entry: entry[0]):
        assignments = [
            f"{meta.get('key', name)}={_render_value(meta, getattr(record, name))}"
            for name, meta in record.schema().items()
            if meta['kind'] not in ('entity_kind', 'comm_kind')
            and getattr(record, name) not in (None, ())
        ]
        lines.append(f"{_block_type(record)} {record.code} {{ {' '.join(assignments)} }}")
    return '\n'.join(lines) + ('\n' if lines else '')
