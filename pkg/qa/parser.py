"""Question parser.

Recursive descent over a token list, one method per production:

    question          ::= general | special
    general           ::= auxiliary [not] subject-group [not] rest-of-predicate
    special           ::= [preposition] interrogative [noun-group] auxiliary
                          subject-group [not] rest-of-predicate
                        | who/what predicate objects adverbials
                        | which/what/whose/how many/how much noun-group
                          predicate objects adverbials
                        | who/what be basic-noun-phrase adverbials
    rest-of-predicate ::= verb objects adverbials | be-complement adverbials

Word classes (auxiliaries, verb forms, prepositions, adverbs, determiners,
pronouns, titles, interrogative phrases) all come from the lexicon. The parse
is a single left-to-right pass; the only lookahead is the interrogative phrase
table and one token for verb particles ("cry out").

build_query turns the parsed form into a query predicate whose entity, place
and time slots hold partially specified records instead of codes.
"""
import logging
import re
from dataclasses import dataclass, replace
from typing import NamedTuple, Optional

from django.db import models

from .exceptions import (EmptyInput, QuestionSyntaxError, UnknownInterrogative,
                         UnsupportedConstruction)
from .models import (ARTICLES, CONSTRUCTION_DETAILS, FINAL_LOCATIONS, LOCATION_KINDS, ROOMS,
                     ActionFact, CommFact, DayOfWeek, EntityRecord, EventFact, Month, PartOfDay,
                     PersonRecord, PlaceRecord, PredicateKind, QuestionTarget, Season,
                     SemanticCode, Target, Tense, TenseType, TimeRecord, VerbForm,
                     classify_code, classify_verb)

logger = logging.getLogger(__name__)

END = '?'
NEGATIONS = frozenset({'not', "n't"})
POSSESSIVE = "'s"
CONTRACTIONS = {"can't": ('can', "n't"), "won't": ('will', "n't"), "shan't": ('shall', "n't")}
# Group connectors: "one of the men", "ship's company".
CONNECTORS = frozenset({'of', POSSESSIVE})
# "what <noun>" reads as "which <noun>".
DEFAULT_PROPERTY = 'name'
# The one auxiliary that is also a main verb: "Has the captain a boat?"
POSSESSION = 'have'
OWNER = 'owner'

_WORD = re.compile(r"[A-Za-z0-9]+(?:[-'][A-Za-z0-9]+)*|\S")


class Token(NamedTuple):
    text: str
    position: int
    capitalized: bool = False


class QuestionKind(models.TextChoices):
    GENERAL = 'General', 'general'
    SPECIAL = 'Special', 'special'


def _join(words):
    return ' '.join(words).replace(f' {POSSESSIVE}', POSSESSIVE)


@dataclass(frozen=True)
class Phrase:
    """A token span, optionally introduced by a preposition."""
    tokens: tuple
    preposition: Optional[str] = None

    @property
    def words(self):
        return tuple(token.text for token in self.tokens)

    @property
    def text(self):
        return _join(self.words)

    def __str__(self):
        if self.preposition:
            return f'{self.preposition} {self.text}'
        return self.text


@dataclass(frozen=True)
class QuestionForm:
    kind: str
    target: Optional[QuestionTarget] = None
    interrogative: Optional[str] = None
    leading_preposition: Optional[str] = None
    auxiliary: Optional[str] = None
    auxiliary_form: Optional[tuple] = None
    negated: bool = False
    subject_phrase: Optional[Phrase] = None
    verb_phrase: Optional[Phrase] = None
    verb_lemma: Optional[str] = None
    verb_form: Optional[tuple] = None
    object_phrases: tuple = ()
    adverbial_phrases: tuple = ()
    complement: Optional[Phrase] = None
    interrogative_noun: Optional[Phrase] = None
    infinitive: Optional[Phrase] = None
    clause: Optional[Phrase] = None
    stranded_preposition: Optional[str] = None

    def describe(self):
        rows = [
            ('kind', self.kind),
            ('target', self.target),
            ('interrogative', self.interrogative),
            ('leading preposition', self.leading_preposition),
            ('auxiliary', self.auxiliary),
            ('negated', self.negated),
            ('subject', self.subject_phrase),
            ('verb', self.verb_lemma),
            ('objects', ', '.join(map(str, self.object_phrases)) or None),
            ('adverbials', ', '.join(map(str, self.adverbial_phrases)) or None),
            ('complement', self.complement),
            ('interrogative noun', self.interrogative_noun),
            ('infinitive', self.infinitive),
            ('clause', self.clause),
            ('stranded preposition', self.stranded_preposition),
        ]
        return [(label, str(value)) for label, value in rows if value not in (None, False)]


@dataclass(frozen=True)
class QueryPredicate:
    """A partially specified fact with one questioned slot.

    `retry_target` is the fallback slot when the first reading yields nothing,
    asked of `retry_pattern` when the second reading moves a stated object
    ("Whom did the captain give the boat?"); `filler_constraint` restricts
    fillers to those identifying with the interrogative noun group ("What boat
    ...").
    """
    kind: str
    pattern: object
    questioned_slot: QuestionTarget
    retry_target: Optional[QuestionTarget] = None
    filler_constraint: object = None
    retry_pattern: object = None

    @property
    def is_general(self):
        return self.questioned_slot.target == Target.YES_NO


# =========
# TOKENIZER
# =========

def _split(word):
    lower = word.lower()
    if lower in CONTRACTIONS:
        return list(CONTRACTIONS[lower])
    if lower.endswith("n't") and len(word) > 3:
        return [word[:-3], word[-3:]]
    if lower.endswith(POSSESSIVE) and len(word) > 2:
        return [word[:-2], POSSESSIVE]
    return [word]


def tokenize(text):
    words = [part for match in _WORD.finditer(text or '') for part in _split(match.group())]
    if not [word for word in words if word != END]:
        raise EmptyInput('empty question')
    if words[-1] != END:
        words.append(END)
    return [Token(word.lower(), position, word[:1].isupper())
            for position, word in enumerate(words, start=1)]


# ======
# PARSER
# ======

class QuestionParser:

    def __init__(self, tokens, lexicon):
        self.tokens = list(tokens)
        self.lexicon = lexicon
        self.pos = 0
        self.parts = {}
        self.objects = []
        self.adverbials = []
        self.aux_token = None

    # cursor

    def peek(self, offset=0):
        index = self.pos + offset
        return self.tokens[index] if index < len(self.tokens) else None

    def advance(self):
        token = self.peek()
        self.pos += 1
        return token

    def fail(self, expected):
        token = self.peek()
        if token is None:
            position = self.tokens[-1].position + 1 if self.tokens else 1
            raise QuestionSyntaxError(position, expected)
        raise QuestionSyntaxError(token.position, expected, token.text)

    def at_end(self):
        token = self.peek()
        return token is None or token.text == END

    # word classes

    def is_auxiliary(self, token):
        return token is not None and token.text in self.lexicon.auxiliaries

    def verb_form(self, token):
        if token is None or token.text == END:
            return None
        return self.lexicon.verb_form(token.text)

    def is_preposition(self, token):
        return token is not None and token.text in self.lexicon.prepositions

    def is_adverb(self, token):
        return token is not None and token.text in self.lexicon.adverbs

    def is_negation(self, token):
        return token is not None and token.text in NEGATIONS

    def is_determiner(self, token):
        return token.text in ARTICLES or token.text in self.lexicon.determiners

    def is_proper(self, token):
        return token.capitalized or token.text in self.lexicon.titles

    # productions

    def parse(self):
        if self.is_auxiliary(self.peek()):
            self.parts['kind'] = QuestionKind.GENERAL
            self.general()
        else:
            self.parts['kind'] = QuestionKind.SPECIAL
            self.special()
        self.finish()
        form = QuestionForm(
            object_phrases=tuple(self.objects),
            adverbial_phrases=tuple(self.adverbials),
            **self.parts,
        )
        if form.kind == QuestionKind.GENERAL:
            return replace(form, target=QuestionTarget(Target.YES_NO))
        return replace(form, target=resolve_target(form.interrogative, form, self.lexicon))

    def finish(self):
        if self.peek() is None or self.peek().text != END:
            self.fail("'?'")
        self.advance()
        if self.peek() is not None:
            self.fail('end of question')

    def general(self):
        self.auxiliary()
        self.negation()
        self.parts['subject_phrase'] = self.noun_group('subject group')
        self.negation()
        self.rest_of_predicate()

    def special(self):
        match = self.interrogative_phrase()
        if match is None and self.is_preposition(self.peek()):
            match = self.interrogative_phrase(offset=1)
            if match is not None:
                self.parts['leading_preposition'] = self.advance().text
        if match is None:
            self.fail('auxiliary verb or interrogative word')
        phrase, width = match
        self.pos += width
        self.parts['interrogative'] = phrase
        entry = self.lexicon.interrogatives[phrase]

        token = self.peek()
        if entry.target == Target.SUBJECT_PROPERTY:
            self.parts['interrogative_noun'] = self.noun_group('noun group')
        elif (entry.target == Target.SUBJECT and not self.at_end()
              and not self.is_auxiliary(token) and self.verb_form(token) is None
              and self.starts_noun_group(token)):
            self.parts['interrogative_noun'] = self.noun_group('noun group')
        asks_subject = (entry.target == Target.SUBJECT
                        or 'interrogative_noun' in self.parts)

        token = self.peek()
        if self.is_auxiliary(token):
            following = self.peek(1)
            aux = self.lexicon.auxiliaries[token.text]
            if asks_subject and (self.verb_form(following) is not None
                                 or self.is_negation(following)):
                self.subject_form()
            elif asks_subject and aux.lemma == 'be':
                self.subject_form()
            else:
                self.auxiliary()
                self.negation()
                self.parts['subject_phrase'] = self.noun_group('subject group')
                self.negation()
                self.rest_of_predicate()
        elif asks_subject and self.verb_form(token) is not None:
            self.subject_form()
        elif asks_subject:
            self.fail('verb or auxiliary verb')
        else:
            self.fail('auxiliary verb')

    def subject_form(self):
        """who/what (or an interrogative noun group) directly followed by the
        predicate."""
        if self.is_auxiliary(self.peek()):
            aux = self.auxiliary()
            self.negation()
            if aux.lemma == 'be':
                if self.verb_form(self.peek()) is not None:
                    raise UnsupportedConstruction(
                        f"be with a participle at token {self.peek().position} is not supported")
                self.nominal()
                return
        self.main_verb()
        self.objects_and_adverbials()

    def auxiliary(self):
        token = self.advance()
        form = self.lexicon.auxiliaries[token.text]
        self.parts['auxiliary'] = form.lemma
        self.parts['auxiliary_form'] = form
        self.aux_token = token
        return form

    def negation(self):
        if self.is_negation(self.peek()):
            self.advance()
            self.parts['negated'] = True

    def rest_of_predicate(self):
        if self.parts['auxiliary'] == 'be':
            token = self.peek()
            if self.verb_form(token) is not None and not self.is_determiner(token):
                raise UnsupportedConstruction(
                    f"be with a participle at token {token.position} is not supported")
            self.split_be_subject()
            self.nominal()
            return
        self.main_verb()
        self.objects_and_adverbials()

    def split_be_subject(self):
        """"Was the man asleep?": with no determiner before the complement, the
        first content word of a determiner-led subject group is its head."""
        subject = self.parts.get('subject_phrase')
        if subject is None or not (self.at_end() or self.is_preposition(self.peek())):
            return
        tokens = subject.tokens
        if not tokens or not self.is_determiner(tokens[0]) or CONNECTORS & set(subject.words):
            return
        content = [index for index, token in enumerate(tokens) if not self.is_determiner(token)]
        if len(content) < 2:
            return
        head = content[0] + 1
        self.parts['subject_phrase'] = Phrase(tokens[:head])
        self.parts['complement'] = Phrase(tokens[head:])

    def nominal(self):
        """be + complement (basic noun phrase or adjective) + adverbials."""
        self.parts['verb_phrase'] = Phrase((self.aux_token,))
        self.parts['verb_lemma'] = 'be'
        self.parts['verb_form'] = self.parts['auxiliary_form']
        tokens = []
        while not self.at_end():
            token = self.peek()
            if self.is_preposition(token) or self.is_adverb(token) or token.text == ',':
                break
            if self.is_negation(token):
                self.fail('complement or adverbial modifier')
            tokens.append(self.advance())
        if tokens:
            self.parts['complement'] = Phrase(tuple(tokens))
        self.objects_and_adverbials(allow_objects=False)

    def main_verb(self):
        token = self.peek()
        form = self.verb_form(token)
        subject = self.parts.get('subject_phrase')
        if form is None and subject is not None and self.can_yield_verb(subject):
            # An unknown verb was read as the last word of the subject group.
            self.pos -= 1
            self.parts['subject_phrase'] = Phrase(subject.tokens[:-1])
            token = self.peek()
            form = VerbForm(token.text)
        if form is None:
            aux = self.parts.get('auxiliary_form')
            if aux is None or aux.lemma != POSSESSION or subject is None:
                self.fail('verb')
            # "Has the captain a boat?": the auxiliary is the main verb.
            self.parts['verb_phrase'] = Phrase((self.aux_token,))
            self.parts['verb_lemma'] = aux.lemma
            self.parts['verb_form'] = self.lexicon.forms.get(self.aux_token.text, aux)
            self.parts['auxiliary_form'] = None
            return
        tokens = [self.advance()]
        lemma = form.lemma
        particle = self.peek()
        if particle is not None and f'{lemma} {particle.text}' in self.lexicon.verb_codes:
            tokens.append(self.advance())
            lemma = f'{lemma} {particle.text}'
        self.parts['verb_phrase'] = Phrase(tuple(tokens))
        self.parts['verb_lemma'] = lemma
        self.parts['verb_form'] = form

    def can_yield_verb(self, subject):
        if not subject.tokens or self.is_proper(subject.tokens[0]):
            return False
        if subject.tokens[-1].text in CONNECTORS:
            return False
        content = [token for token in subject.tokens if not self.is_determiner(token)]
        return len(content) >= 2

    def objects_and_adverbials(self, allow_objects=True):
        while not self.at_end():
            token = self.peek()
            if token.text == ',':
                self.fail("object, adverbial modifier or '?'")
            if self.is_adverb(token):
                self.adverbials.append(Phrase((self.advance(),)))
            elif token.text == 'to' and self.verb_form(self.peek(1)) is not None:
                self.parts['infinitive'] = self.run_until_adverb()
            elif self.is_preposition(token):
                preposition = self.advance()
                if self.at_end() and self.peek() is not None:
                    self.parts['stranded_preposition'] = preposition.text
                    continue
                group = self.noun_group('noun group after preposition', in_phrase=True)
                self.adverbials.append(Phrase(group.tokens, preposition.text))
            elif token.text == 'that' and self.introduces_clause():
                self.advance()
                self.parts['clause'] = self.run_until_adverb()
                if not self.parts['clause'].tokens:
                    self.fail('clause')
            elif allow_objects and len(self.objects) < 2 and self.starts_noun_group(token):
                self.objects.append(self.noun_group('object'))
            else:
                self.fail("object, adverbial modifier or '?'")

    def introduces_clause(self):
        lemma = self.parts.get('verb_lemma')
        code = self.lexicon.verb_codes.get(lemma)
        return code is not None and classify_code(code) != PredicateKind.ACTION

    def run_until_adverb(self):
        tokens = []
        while not self.at_end() and not self.is_adverb(self.peek()):
            tokens.append(self.advance())
        return Phrase(tuple(tokens))

    def starts_noun_group(self, token):
        return not (token.text in (END, ',') or self.is_preposition(token) or self.is_adverb(token)
                    or self.is_negation(token) or self.is_auxiliary(token))

    def ends_noun_group(self, token, in_phrase):
        if token is None or token.text in (END, ','):
            return True
        if token.text in CONNECTORS:
            return False
        return self.is_preposition(token) or self.is_adverb(token) or self.is_negation(token) \
            or (not in_phrase and self.is_auxiliary(token))

    def noun_group(self, expected, in_phrase=False):
        """[determiner] premodifiers head, or a run of capitalized names.
        Groups chain with "of" and the possessive marker."""
        token = self.peek()
        if token is None or token.text == END or self.ends_noun_group(token, in_phrase):
            self.fail(expected)
        if token.text in self.lexicon.pronouns:
            raise UnsupportedConstruction(
                f"pronoun '{token.text}' at token {token.position} is not supported")
        tokens = []
        if self.is_proper(token):
            while self.peek() is not None and self.peek().text != END and self.is_proper(self.peek()):
                tokens.append(self.advance())
            if self.peek() is None or self.peek().text not in CONNECTORS:
                return Phrase(tuple(tokens))
        has_content = False
        while not self.ends_noun_group(self.peek(), in_phrase):
            token = self.peek()
            if has_content and self.is_determiner(token):
                break
            if has_content and not in_phrase and self.verb_form(token) is not None:
                break
            tokens.append(self.advance())
            if token.text in CONNECTORS:
                has_content = False
            elif not self.is_determiner(token):
                has_content = True
        if not has_content:
            self.fail(expected)
        return Phrase(tuple(tokens))

    def interrogative_phrase(self, offset=0):
        """Longest interrogative phrase starting at the cursor."""
        start = self.pos + offset
        widest = min(self.lexicon.longest_interrogative, len(self.tokens) - start)
        for width in range(widest, 0, -1):
            words = [token.text for token in self.tokens[start:start + width]]
            phrase = ' '.join(words)
            if END not in words and phrase in self.lexicon.interrogatives:
                return phrase, width
        return None


def parse_question(tokens, lexicon):
    if not tokens:
        raise EmptyInput('empty question')
    parser = QuestionParser(tokens, lexicon)
    form = parser.parse()
    logger.debug('question parsed', extra={'kind': str(form.kind), 'target': str(form.target)})
    return form


def resolve_target(interrogative, context, lexicon):
    try:
        entry = lexicon.interrogatives[interrogative]
    except KeyError:
        raise UnknownInterrogative(interrogative) from None
    if entry.target not in (Target.SUBJECT, Target.DIRECT_OBJECT, Target.SUBJECT_PROPERTY):
        return entry

    if context.subject_phrase is None:
        if context.interrogative_noun is not None:
            return QuestionTarget(Target.SUBJECT_PROPERTY, entry.attribute or DEFAULT_PROPERTY)
        if entry.target == Target.SUBJECT:
            return QuestionTarget(Target.SUBJECT)
        raise UnsupportedConstruction(f"'{interrogative}' cannot ask for the subject")

    # "Whose boat did the men reach?" asks for the owner of the object
    attribute = OWNER if entry.attribute == OWNER else None
    preposition = context.leading_preposition or context.stranded_preposition
    if preposition is not None and preposition in lexicon.prepositions:
        return QuestionTarget(lexicon.prepositions[preposition], attribute)
    return QuestionTarget(Target.DIRECT_OBJECT, attribute)


# =================
# SEMANTIC ANALYSIS
# =================

def _fail_unless(condition, message):
    if not condition:
        raise UnsupportedConstruction(message)


def _tense(form):
    if form.auxiliary_form is not None:
        return form.auxiliary_form.tense, form.auxiliary_form.tense_type
    if form.verb_form is not None and form.verb_form.tense is not None:
        return form.verb_form.tense, form.verb_form.tense_type
    return Tense.PRESENT, TenseType.INDEFINITE


def noun_group_predicate(phrase, lexicon):
    """Sub-predicate of a noun group: a person for proper names, otherwise a
    generic noun group whose type identification settles. "Ann's boat" is the
    boat with Ann's record as its owner."""
    tokens = list(phrase.tokens)
    marks = [index for index, token in enumerate(tokens) if token.text == POSSESSIVE]
    if marks and 0 < marks[-1] < len(tokens) - 1:
        owned = noun_group_predicate(Phrase(tuple(tokens[marks[-1] + 1:])), lexicon)
        if isinstance(owned, EntityRecord):
            owner = noun_group_predicate(Phrase(tuple(tokens[:marks[-1]])), lexicon)
            return replace(owned, owner=owner)
    if all(token.capitalized or token.text in lexicon.titles for token in tokens):
        titles = [token.text for token in tokens if token.text in lexicon.titles]
        names = [token.text for token in tokens if token.text not in lexicon.titles]
        _fail_unless(names, f"'{phrase}' holds a title without a name")
        return PersonRecord(
            additional_data=' '.join(titles) or None,
            first_name=' '.join(names[:-1]) or None,
            last_name=names[-1],
        )
    while tokens and (tokens[0].text in ARTICLES or tokens[0].text in lexicon.determiners):
        tokens.pop(0)
    words = [token.text for token in tokens]
    if CONNECTORS & set(words):
        return EntityRecord(designation=_join(words))
    head, premodifiers = tokens[-1], tokens[:-1]
    quantity = None
    properties = []
    for token in premodifiers:
        if token.text.isdigit():
            quantity = int(token.text)
        else:
            properties.append((EntityRecord.ANY_ATTRIBUTE, token.text))
    if head.capitalized:
        return EntityRecord(name=head.text, quantity=quantity, properties=tuple(properties))
    return EntityRecord(designation=head.text, quantity=quantity, properties=tuple(properties))


def place_fields(phrase):
    """PlaceRecord fields named by a place adverbial ("in Kiev", "on
    Khreshchatyk street", "in house 5", "in apartment 9", "on the roof")."""
    tokens = [token for token in phrase.tokens if token.text not in ARTICLES]
    values = {}
    index = 0
    while index < len(tokens):
        token = tokens[index]
        following = tokens[index + 1].text if index + 1 < len(tokens) else None
        pair = f'{token.text} {following}' if following else None
        if token.capitalized:
            names = []
            while index < len(tokens) and tokens[index].capitalized:
                names.append(tokens[index].text)
                index += 1
            if index < len(tokens) and tokens[index].text in LOCATION_KINDS:
                values['location_name'] = ' '.join(names)
                index += 1
            else:
                values['territorial_name'] = ' '.join(names)
            continue
        if token.text.isdigit():
            values['construction_name'] = token.text
        elif token.text in ('house', 'number', 'building') and following and following.isdigit():
            values['construction_name'] = following
            index += 1
        elif token.text in FINAL_LOCATIONS:
            if following and following.isdigit():
                values['final_location'] = following
                index += 1
            else:
                values['final_location'] = token.text
        elif token.text in CONSTRUCTION_DETAILS:
            values['construction_detail'] = token.text
        elif pair in ROOMS:
            values['room'] = pair
            index += 1
        elif token.text in ROOMS:
            values['room'] = token.text
        else:
            values['construction_kind'] = token.text
        index += 1
    return values


TIME_WORDS = frozenset({*Season.values, *Month.values, *DayOfWeek.values, *PartOfDay.values,
                        'hours', "o'clock", 'of'})


def names_time(phrase):
    """"in 1990", "at night": place prepositions also introduce times."""
    words = [word for word in phrase.words if word not in ARTICLES]
    return bool(words) and all(word.isdigit() or word in TIME_WORDS for word in words)


def time_fields(phrase):
    """TimeRecord fields named by a time adverbial ("in 1990", "on 3 may 1990",
    "at 14 hours", "at night", "in summer")."""
    tokens = [token.text for token in phrase.tokens if token.text not in ARTICLES]
    values = {}
    rest = []
    for index, word in enumerate(tokens):
        following = tokens[index + 1] if index + 1 < len(tokens) else None
        previous = tokens[index - 1] if index else None
        if word.isdigit():
            if len(word) == 4:
                values['year'] = int(word)
            elif following in ('hours', "o'clock"):
                values['hours'] = int(word)
            elif following in Month.values or previous in Month.values:
                values['day_in_month'] = int(word)
            else:
                raise UnsupportedConstruction(f"cannot place the number {word} in a time")
        elif word in Season.values:
            values['season'] = Season(word)
        elif word in Month.values:
            values['month'] = Month(word)
        elif word in DayOfWeek.values:
            values['day_of_week'] = DayOfWeek(word)
        elif word in PartOfDay.values:
            values['part_of_day'] = PartOfDay(word)
        elif word not in ('hours', "o'clock", 'of'):
            rest.append(word)
    if rest:
        values['holiday'] = ' '.join(rest)
    return values


def _extends_content(phrase, lexicon):
    if phrase.preposition is None or names_time(phrase):
        return False
    return lexicon.prepositions.get(phrase.preposition) in (Target.PLACE, Target.INDIRECT_OBJECT)


def perceived_content(form, lexicon):
    """Phrases an intelligence verb perceives ("Did the captain see small boat
    there with man?"): from the first object to the last object, place or
    with-phrase. Trailing times, manner and purpose stay adverbials."""
    start = form.object_phrases[0].tokens[0].position
    parts = sorted(
        (phrase for phrase in (*form.object_phrases, *form.adverbial_phrases)
         if phrase.tokens[0].position >= start),
        key=lambda phrase: phrase.tokens[0].position,
    )
    while parts and parts[-1] not in form.object_phrases and not _extends_content(parts[-1], lexicon):
        parts.pop()
    return tuple(parts)


def build_query(form, lexicon):
    code = classify_verb(form.verb_lemma, lexicon)
    kind = classify_code(code)
    tense, tense_type = _tense(form)
    target = form.target
    entry = lexicon.interrogatives.get(form.interrogative) if form.interrogative else None

    slots = {}
    if form.subject_phrase is not None:
        slots['subject'] = noun_group_predicate(form.subject_phrase, lexicon)
    elif target.target == Target.SUBJECT_PROPERTY:
        slots['subject'] = noun_group_predicate(form.interrogative_noun, lexicon)

    filler_constraint = None
    if form.interrogative_noun is not None and form.subject_phrase is not None:
        _fail_unless(entry.attribute != 'quantity',
                     f"'{form.interrogative}' cannot ask for an object")
        filler_constraint = noun_group_predicate(form.interrogative_noun, lexicon)

    adverbials, perceived = form.adverbial_phrases, ()
    if kind == PredicateKind.INTELLIGENCE and form.object_phrases \
            and form.clause is None and form.infinitive is None:
        perceived = perceived_content(form, lexicon)
        adverbials = tuple(phrase for phrase in adverbials if phrase not in perceived)

    place, time = {}, {}
    for phrase in adverbials:
        if phrase.preposition is None:
            _fail_unless('way' not in slots, f"two manner adverbials: '{slots.get('way')}', '{phrase}'")
            slots['way'] = phrase.text
            continue
        slot = lexicon.prepositions[phrase.preposition]
        if slot == Target.PLACE and names_time(phrase):
            slot = Target.TIME
        if slot == Target.PLACE:
            place.update(place_fields(phrase))
        elif slot == Target.TIME:
            time.update(time_fields(phrase))
        elif slot == Target.INDIRECT_OBJECT:
            _fail_unless('indirect_object' not in slots, f"two indirect objects in '{phrase}'")
            slots['indirect_object'] = noun_group_predicate(phrase, lexicon)
            slots['preposition'] = phrase.preposition
        elif slot == Target.WAY:
            slots['way'] = str(phrase)
        else:
            slots['purpose'] = str(phrase)
    if place:
        slots['place'] = PlaceRecord(**place)
    if time:
        try:
            slots['time'] = TimeRecord(**time)
        except ValueError as error:
            raise UnsupportedConstruction(str(error)) from None

    objects = [] if perceived else \
        [noun_group_predicate(phrase, lexicon) for phrase in form.object_phrases]
    questioned = target
    retry = None

    if kind == PredicateKind.ACTION:
        if target.target == Target.DIRECT_OBJECT:
            _fail_unless(len(objects) < 2, "a direct object question takes at most one object")
            if objects:
                _fail_unless('indirect_object' not in slots, "two indirect objects")
                slots['indirect_object'] = objects[0]
            if entry is not None and entry.target == Target.DIRECT_OBJECT and not form.leading_preposition:
                # "whom": the direct object first, then the indirect object
                retry = QuestionTarget(Target.INDIRECT_OBJECT)
        elif len(objects) == 1:
            slots['direct_object'] = objects[0]
        elif len(objects) == 2:
            slots['indirect_object'], slots['direct_object'] = objects
        _fail_unless(form.clause is None, "a that-clause needs a verb of communication")
        if form.infinitive is not None:
            slots['purpose'] = form.infinitive.text
        if form.complement is not None:
            _fail_unless(code == SemanticCode.BE, "a complement needs the verb be")
            slots['complement'] = form.complement.text
        pattern_class, extra = ActionFact, {'semantic_type': code}

    elif kind == PredicateKind.EVENT:
        _fail_unless(not objects and form.complement is None and form.infinitive is None,
                     "events take no objects")
        _fail_unless(target.target in (Target.YES_NO, Target.SUBJECT, Target.SUBJECT_PROPERTY,
                                       Target.PLACE, Target.TIME),
                     f"events have no {Target(target.target).label}")
        _fail_unless(not {'way', 'purpose', 'indirect_object'} & set(slots),
                     "events take no manner, purpose or indirect object")
        pattern_class, extra = EventFact, {'scale': lexicon.scale_of(form.verb_lemma)}

    else:
        _fail_unless(target.target != Target.PURPOSE, "communication facts have no purpose")
        _fail_unless('purpose' not in slots, "communication facts have no purpose")
        _fail_unless(form.complement is None, "communication facts take no complement")
        if target.target == Target.DIRECT_OBJECT and entry is not None \
                and entry.target == Target.DIRECT_OBJECT:
            # "whom" asks for a person: the addressee, never the content.
            questioned = QuestionTarget(Target.INDIRECT_OBJECT)
        addressee = slots.pop('indirect_object', None)
        slots.pop('preposition', None)
        if objects:
            _fail_unless(addressee is None, "two addressees")
            addressee = objects[0]
        if addressee is not None:
            slots['addressee'] = addressee
        contents = [part for part in (
            ' '.join(map(str, perceived)) or None,
            form.object_phrases[1].text if len(objects) == 2 else None,
            form.infinitive.text if form.infinitive else None,
            form.clause.text if form.clause else None,
        ) if part]
        _fail_unless(len(contents) < 2, "more than one message content")
        if contents:
            slots['content'] = contents[0]
        pattern_class, extra = CommFact, {'kind': kind}

    if questioned.attribute == OWNER and questioned.target != Target.SUBJECT_PROPERTY:
        _fail_unless(kind == PredicateKind.ACTION
                     and questioned.target in (Target.DIRECT_OBJECT, Target.INDIRECT_OBJECT),
                     f"'{form.interrogative}' asks for the owner of an object")

    questioned_field = QUESTIONED_FIELDS[pattern_class].get(questioned.target)
    if questioned_field is not None and slots.get(questioned_field) is not None:
        raise UnsupportedConstruction(
            f"the question both asks for and states the {Target(questioned.target).label}")

    pattern = pattern_class(
        verb=form.verb_lemma, negation=form.negated, tense=tense, tense_type=tense_type,
        **extra, **slots,
    )
    retry_pattern = None
    if retry is not None and objects:
        retry_pattern = replace(pattern, direct_object=objects[0], indirect_object=None,
                                preposition=None)
    return QueryPredicate(kind, pattern, questioned, retry, filler_constraint, retry_pattern)


# Pattern field emptied by each questioned slot.
QUESTIONED_FIELDS = {
    ActionFact: {
        Target.SUBJECT: 'subject', Target.DIRECT_OBJECT: 'direct_object',
        Target.INDIRECT_OBJECT: 'indirect_object', Target.TIME: 'time', Target.PLACE: 'place',
        Target.WAY: 'way', Target.PURPOSE: 'purpose',
    },
    EventFact: {Target.SUBJECT: 'subject', Target.TIME: 'time', Target.PLACE: 'place'},
    CommFact: {
        Target.SUBJECT: 'subject', Target.DIRECT_OBJECT: 'content',
        Target.INDIRECT_OBJECT: 'addressee', Target.TIME: 'time', Target.PLACE: 'place',
        Target.WAY: 'way',
    },
}
