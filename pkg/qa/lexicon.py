"""Lexicon file reader.

One entry per line, `#` starts a comment:

    verb <lemma> <CODE> [<scale>]          verb "cry out" MESSAGE
    synonyms <lemma>,<lemma>,...
    interrogative "<phrase>" <TARGET> [<attribute>]
    auxiliary <form> <lemma> <tense> <tense_type>
    form <surface> <lemma> <tense> <tense_type>
    preposition <word> PLACE|TIME|INDIRECT_OBJECT|WAY|PURPOSE
    adverb <word>
    determiner <word> / pronoun <word> / title <word>
"""
import logging
from pathlib import Path

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedInput

from .exceptions import DuplicateCode, ParseError
from .models import (Lexicon, QuestionTarget, SemanticCode, Target, Tense, TenseType,
                     VerbForm)

logger = logging.getLogger(__name__)

GRAMMAR = r"""
start: _line*
_line: _entry? _NL

_entry: verb | synonyms | interrogative | auxiliary | form
      | preposition | adverb | closed_class

verb: "verb" lemma WORD [WORD]
synonyms: "synonyms" lemma ("," lemma)*
interrogative: "interrogative" ESCAPED_STRING WORD [WORD]
auxiliary: "auxiliary" WORD WORD WORD WORD
form: "form" WORD WORD WORD WORD
preposition: "preposition" WORD WORD
adverb: "adverb" WORD
closed_class: CLASS WORD

lemma: WORD | ESCAPED_STRING

CLASS: "determiner" | "pronoun" | "title"
WORD: /[A-Za-z][A-Za-z'_-]*/

COMMENT: /#[^\n]*/
%import common.ESCAPED_STRING
%import common.NEWLINE -> _NL
%import common.WS_INLINE
%ignore WS_INLINE
%ignore COMMENT
"""

PREPOSITION_SLOTS = (Target.PLACE, Target.TIME, Target.INDIRECT_OBJECT, Target.WAY, Target.PURPOSE)

_parser = Lark(GRAMMAR, parser='lalr')


def _unquote(token):
    if token.type == 'ESCAPED_STRING':
        return token[1:-1]
    return str(token)


@v_args(inline=True)
class _EntryTransformer(Transformer):
    """Turns the parse tree into (kind, tokens...) tuples; validation happens in _Builder."""

    def lemma(self, token):
        return token

    def verb(self, lemma, code, scale=None):
        return ('verb', lemma, code, scale)

    def synonyms(self, *lemmas):
        return ('synonyms', lemmas)

    def interrogative(self, phrase, target, attribute=None):
        return ('interrogative', phrase, target, attribute)

    def auxiliary(self, surface, lemma, tense, tense_type):
        return ('auxiliary', surface, lemma, tense, tense_type)

    def form(self, surface, lemma, tense, tense_type):
        return ('form', surface, lemma, tense, tense_type)

    def preposition(self, word, slot):
        return ('preposition', word, slot)

    def adverb(self, word):
        return ('adverb', word)

    def closed_class(self, kind, word):
        return (str(kind), word)

    def start(self, *entries):
        return list(entries)


class _Builder:
    def __init__(self, path):
        self.path = path
        self.verb_codes = {}
        self.verb_scales = {}
        self.groups = []
        self.interrogatives = {}
        self.auxiliaries = {}
        self.forms = {}
        self.prepositions = {}
        self.closed = {'adverb': set(), 'determiner': set(), 'pronoun': set(), 'title': set()}

    def fail(self, token, message, error=ParseError):
        raise error.at(token, message, self.path)

    def choice(self, token, choices, what):
        try:
            return choices(str(token))
        except ValueError:
            self.fail(token, f"unknown {what} '{token}'")

    def add(self, entry):
        kind, *args = entry
        getattr(self, f'add_{kind}', self.add_closed)(kind, *args)

    def add_verb(self, kind, lemma_token, code_token, scale_token):
        lemma = _unquote(lemma_token).lower()
        if lemma in self.verb_codes:
            self.fail(lemma_token, f"verb '{lemma}' defined twice", DuplicateCode)
        self.verb_codes[lemma] = self.choice(code_token, SemanticCode, 'semantic code')
        if scale_token is not None:
            self.verb_scales[lemma] = str(scale_token).lower()

    def add_synonyms(self, kind, tokens):
        group = set()
        for token in tokens:
            lemma = _unquote(token).lower()
            if lemma not in self.verb_codes:
                self.fail(token, f"synonym '{lemma}' is not a known verb")
            if any(lemma in other for other in self.groups):
                self.fail(token, f"'{lemma}' already belongs to another synonym group")
            group.add(lemma)
        codes = {self.verb_codes[lemma] for lemma in group}
        if len(codes) > 1:
            self.fail(tokens[0], f"synonym group mixes semantic codes {sorted(codes)}")
        self.groups.append(frozenset(group))

    def add_interrogative(self, kind, phrase_token, target_token, attribute_token):
        phrase = ' '.join(_unquote(phrase_token).lower().split())
        if not phrase or len(phrase.split()) > 3:
            self.fail(phrase_token, "interrogative phrases hold one to three words")
        if phrase in self.interrogatives:
            self.fail(phrase_token, f"interrogative '{phrase}' defined twice", DuplicateCode)
        target = self.choice(target_token, Target, 'question target')
        attribute = str(attribute_token).lower() if attribute_token is not None else None
        self.interrogatives[phrase] = QuestionTarget(target, attribute)

    def _verb_form(self, lemma, tense, tense_type):
        return VerbForm(
            str(lemma).lower(),
            self.choice(tense, Tense, 'tense'),
            self.choice(tense_type, TenseType, 'tense type'),
        )

    def add_auxiliary(self, kind, surface, lemma, tense, tense_type):
        self.auxiliaries[str(surface).lower()] = self._verb_form(lemma, tense, tense_type)

    def add_form(self, kind, surface, lemma, tense, tense_type):
        self.forms[str(surface).lower()] = self._verb_form(lemma, tense, tense_type)

    def add_preposition(self, kind, word, slot_token):
        slot = self.choice(slot_token, Target, 'slot')
        if slot not in PREPOSITION_SLOTS:
            self.fail(slot_token, f"prepositions cannot fill {slot}")
        self.prepositions[str(word).lower()] = slot

    def add_closed(self, kind, word):
        self.closed[kind].add(str(word).lower())

    def build(self):
        return Lexicon(
            verb_codes=self.verb_codes,
            verb_scales=self.verb_scales,
            synonym_groups=tuple(self.groups),
            interrogatives=self.interrogatives,
            auxiliaries=self.auxiliaries,
            forms=self.forms,
            prepositions=self.prepositions,
            adverbs=frozenset(self.closed['adverb']),
            determiners=frozenset(self.closed['determiner']),
            pronouns=frozenset(self.closed['pronoun']),
            titles=frozenset(self.closed['title']),
        )


def parse_lexicon(text, path=None):
    try:
        tree = _parser.parse(text if text.endswith('\n') else text + '\n')
    except UnexpectedInput as error:
        raise ParseError.from_lark(error, path) from None
    builder = _Builder(path)
    for entry in _EntryTransformer().transform(tree):
        builder.add(entry)
    return builder.build()


def load_lexicon(path):
    path = Path(path)
    lexicon = parse_lexicon(path.read_text(encoding='utf-8'), str(path))
    logger.info(
        'lexicon loaded',
        extra={'path': str(path), 'verbs': len(lexicon.verb_codes),
               'interrogatives': len(lexicon.interrogatives)},
    )
    return lexicon
