"""Predicate records, verb classification and the lexicon.

Nothing here is stored in a database: records are immutable value objects built
by the fact reader (facts.py) or by the question parser (parser.py). The
enumerations are Django choices so that each value carries a readable label.
"""
from dataclasses import dataclass, field, fields
from typing import NamedTuple, Optional

from django.db import models

from .exceptions import UnknownVerb


# ==============
# ENUMERATIONS
# ==============

class SemanticCode(models.TextChoices):
    JOB = 'JOB', 'long purposeful occupation'
    PROPEL = 'PROPEL', 'applying a force to an object'
    MOVE = 'MOVE', 'moving a body part'
    INGEST = 'INGEST', 'ingesting something inside'
    EXPEL = 'EXPEL', 'expelling something from a subject'
    GRASP = 'GRASP', 'grasping an object'
    GO = 'GO', 'displacement of a subject'
    TRANSFER = 'TRANSFER', 'change of general relation for a subject'
    FEEL = 'FEEL', 'perception of a subject'
    MESSAGE = 'MESSAGE', 'transmission of information between a subject and object'
    BE = 'BE', 'identity, existence or class membership of a subject'
    CHANGE = 'CHANGE', 'transition of a subject to another state'
    CREATE = 'CREATE', 'thinking'
    DO = 'DO', 'an action'


class PredicateKind(models.TextChoices):
    ACTION = 'ACTION', 'action'
    JOB = 'JOB', 'job'
    MESSAGE = 'MESSAGE', 'message'
    INTELLIGENCE = 'INTELLIGENCE', 'intelligence'
    EVENT = 'EVENT', 'event'


class Sex(models.TextChoices):
    MALE = 'male', 'Male'
    FEMALE = 'female', 'Female'
    UNKNOWN = 'unknown', 'Unknown'


class Season(models.TextChoices):
    SPRING = 'spring', 'Spring'
    SUMMER = 'summer', 'Summer'
    AUTUMN = 'autumn', 'Autumn'
    WINTER = 'winter', 'Winter'


class Month(models.TextChoices):
    JANUARY = 'january', 'January'
    FEBRUARY = 'february', 'February'
    MARCH = 'march', 'March'
    APRIL = 'april', 'April'
    MAY = 'may', 'May'
    JUNE = 'june', 'June'
    JULY = 'july', 'July'
    AUGUST = 'august', 'August'
    SEPTEMBER = 'september', 'September'
    OCTOBER = 'october', 'October'
    NOVEMBER = 'november', 'November'
    DECEMBER = 'december', 'December'


class DayOfWeek(models.TextChoices):
    MONDAY = 'monday', 'Monday'
    TUESDAY = 'tuesday', 'Tuesday'
    WEDNESDAY = 'wednesday', 'Wednesday'
    THURSDAY = 'thursday', 'Thursday'
    FRIDAY = 'friday', 'Friday'
    SATURDAY = 'saturday', 'Saturday'
    SUNDAY = 'sunday', 'Sunday'


class PartOfDay(models.TextChoices):
    MORNING = 'morning', 'Morning'
    AFTERNOON = 'afternoon', 'Afternoon'
    EVENING = 'evening', 'Evening'
    NIGHT = 'night', 'Night'


class Tense(models.TextChoices):
    PRESENT = 'present', 'Present'
    PAST = 'past', 'Past'
    FUTURE = 'future', 'Future'


class TenseType(models.TextChoices):
    INDEFINITE = 'indefinite', 'Indefinite'
    CONTINUOUS = 'continuous', 'Continuous'
    PERFECT = 'perfect', 'Perfect'
    PERFECT_CONTINUOUS = 'perfect_continuous', 'Perfect continuous'


class EntityKind(models.TextChoices):
    ORGANIZATION = 'organization', 'Organization'
    THING = 'thing', 'Thing'
    MACHINE = 'machine', 'Machine'


class Target(models.TextChoices):
    """The slot an interrogative points to."""
    YES_NO = 'YES_NO', 'yes or no'
    SUBJECT = 'SUBJECT', 'subject'
    SUBJECT_PROPERTY = 'SUBJECT_PROPERTY', 'property of the subject'
    DIRECT_OBJECT = 'DIRECT_OBJECT', 'direct object'
    INDIRECT_OBJECT = 'INDIRECT_OBJECT', 'indirect object'
    TIME = 'TIME', 'time'
    PLACE = 'PLACE', 'place'
    WAY = 'WAY', 'way'
    PURPOSE = 'PURPOSE', 'purpose'


# Physical effect or change of general relation.
PHYSICAL_CODES = frozenset({
    SemanticCode.PROPEL, SemanticCode.MOVE, SemanticCode.INGEST, SemanticCode.EXPEL,
    SemanticCode.GRASP, SemanticCode.GO, SemanticCode.TRANSFER,
})

ACTION_CODES = PHYSICAL_CODES | {SemanticCode.BE, SemanticCode.DO}

COMM_KINDS = frozenset({PredicateKind.JOB, PredicateKind.MESSAGE, PredicateKind.INTELLIGENCE})

CODE_KINDS = {
    **{code: PredicateKind.ACTION for code in ACTION_CODES},
    SemanticCode.JOB: PredicateKind.JOB,
    SemanticCode.MESSAGE: PredicateKind.MESSAGE,
    SemanticCode.FEEL: PredicateKind.INTELLIGENCE,
    SemanticCode.CREATE: PredicateKind.INTELLIGENCE,
    SemanticCode.CHANGE: PredicateKind.EVENT,
}

# Place vocabulary, used to house noun groups in PlaceRecord fields.
LOCATION_KINDS = frozenset({'street', 'square', 'park', 'line', 'avenue'})
CONSTRUCTION_DETAILS = frozenset({'stairs', 'roof', 'garret', 'floor'})
FINAL_LOCATIONS = frozenset({'apartment', 'hall', 'office', 'restaurant', 'cafe'})
ROOMS = frozenset({'bathroom', 'bedroom', 'living room', 'kitchen'})

ARTICLES = ('a', 'an', 'the')


# ==============
# TEXT HELPERS
# ==============

def fold(text):
    """Case-folded text with runs of whitespace collapsed."""
    return ' '.join(str(text).casefold().split())


def fold_designation(text):
    words = fold(text).split(' ')
    if len(words) > 1 and words[0] in ARTICLES:
        words = words[1:]
    return ' '.join(words)


def fold_number(text):
    """House and apartment numbers compare without leading zeros."""
    return fold(text).lstrip('0') or '0'


# ==============
# FIELD SCHEMA
# ==============
# Field metadata drives the fact reader/writer and the identification
# comparisons: `kind` is one of text, int, bool, enum, ref, object, texts,
# pairs, semcode.

def _text(**kwargs):
    return field(default=None, metadata={'kind': 'text', **kwargs})


def _int(low=None, high=None):
    return field(default=None, metadata={'kind': 'int', 'low': low, 'high': high})


def _enum(choices):
    return field(default=None, metadata={'kind': 'enum', 'choices': choices})


def _ref(namespace):
    return field(default=None, metadata={'kind': 'ref', 'namespace': namespace})


@dataclass(frozen=True)
class Ref:
    """A code reference to another record."""
    code: str

    def __str__(self):
        return self.code


class Predicate:
    """Shared behaviour of every record and fact dataclass."""

    @classmethod
    def schema(cls):
        return {f.name: f.metadata for f in fields(cls) if f.name != 'code'}

    def populated(self):
        """Names of fields (other than code) holding a value."""
        return frozenset(
            name for name in self.schema()
            if getattr(self, name) not in (None, (), '')
        )


# ==================
# OBJECT PREDICATES
# ==================

@dataclass(frozen=True)
class PersonRecord(Predicate):
    code: Optional[str] = None
    designation: Optional[str] = _text()
    sex: Optional[str] = _enum(Sex)
    first_name: Optional[str] = _text()
    last_name: Optional[str] = _text()
    additional_data: Optional[str] = _text()
    birth_place: Optional[str] = _ref('place')
    nationality: Optional[str] = _text()
    mother_tongue: Optional[str] = _text()
    other_tongues: tuple = field(default=(), metadata={'kind': 'texts'})
    residence: Optional[str] = _ref('place')
    face: Optional[str] = _text()
    nose: Optional[str] = _text()
    constitution: Optional[str] = _text()
    eyes: Optional[str] = _text()
    hair: Optional[str] = _text()
    birth_date: Optional[str] = _ref('time')
    stature: Optional[str] = _text()
    temperament: Optional[str] = _text()
    psychological_type: Optional[str] = _text()
    profession: Optional[str] = _text()

    NAME_FIELDS = frozenset({'first_name', 'last_name'})

    def __str__(self):
        if self.designation:
            return self.designation
        names = [name for name in (self.first_name, self.last_name) if name]
        return ' '.join(names) or (self.code or '?')


@dataclass(frozen=True)
class PlaceRecord(Predicate):
    code: Optional[str] = None
    country: Optional[str] = _text()
    region_type: Optional[str] = _text()
    region_name: Optional[str] = _text()
    territorial_entity: Optional[str] = _text()
    territorial_name: Optional[str] = _text()            # town
    location_kind: Optional[str] = _text()
    location_name: Optional[str] = _text()               # street
    construction_kind: Optional[str] = _text()
    construction_name: Optional[str] = _text(number=True)  # house number or construction name
    construction_detail: Optional[str] = _text()         # stairs, roof, garret, floor
    final_location: Optional[str] = _text(number=True)   # apartment
    room: Optional[str] = _text()

    def __str__(self):
        parts = [
            self.country,
            self.region_name or self.region_type,
            self.territorial_name or self.territorial_entity,
            self.location_name or self.location_kind,
            self.construction_name or self.construction_kind,
            self.construction_detail,
            self.final_location,
            self.room,
        ]
        if self.location_name and self.location_kind:
            parts[3] = f'{self.location_name} {self.location_kind}'
        return ' '.join(str(part) for part in parts if part) or (self.code or '?')


@dataclass(frozen=True)
class TimeRecord(Predicate):
    code: Optional[str] = None
    year: Optional[int] = _int()
    season: Optional[str] = _enum(Season)
    month: Optional[str] = _enum(Month)
    day_in_month: Optional[int] = _int(1, 31)
    day_of_week: Optional[str] = _enum(DayOfWeek)
    holiday: Optional[str] = _text()
    part_of_day: Optional[str] = _enum(PartOfDay)
    hours: Optional[int] = _int(0, 23)

    def __post_init__(self):
        for name, meta in self.schema().items():
            value = getattr(self, name)
            if meta['kind'] != 'int' or value is None:
                continue
            if meta['low'] is not None and not meta['low'] <= value <= meta['high']:
                raise ValueError(f"{name} must lie within {meta['low']}-{meta['high']}, got {value}")

    def __str__(self):
        parts = [self.year, self.season, self.month, self.day_in_month, self.day_of_week,
                 self.holiday, self.part_of_day, self.hours]
        return ' '.join(str(part) for part in parts if part is not None) or (self.code or '?')


@dataclass(frozen=True)
class EntityRecord(Predicate):
    """Organization, thing or machine.

    In a question, `kind` may be absent: the parser produces such a generic noun
    group for "the <noun>" and identification adopts the database record's type.
    A possessive ("Ann's boat") puts the possessor's record in `owner`.
    Property pairs whose attribute is '*' match any attribute with that value.
    """
    code: Optional[str] = None
    kind: Optional[str] = field(default=None, metadata={'kind': 'entity_kind'})
    designation: Optional[str] = _text()
    name: Optional[str] = _text()
    quantity: Optional[int] = _int()
    owner: Optional[str] = _ref('entity')
    location: Optional[str] = _ref('place')
    properties: tuple = field(default=(), metadata={'kind': 'pairs'})

    ANY_ATTRIBUTE = '*'

    def populated(self):
        return super().populated() - {'kind'}

    @property
    def is_generic(self):
        return self.kind is None

    def __str__(self):
        return self.designation or self.name or (self.code or '?')


# ================
# FACT PREDICATES
# ================

def _negation():
    return field(default=False, metadata={'kind': 'bool'})


def _tense():
    return field(default=None, metadata={'kind': 'enum', 'choices': Tense, 'required': True})


def _tense_type():
    return field(default=TenseType.INDEFINITE, metadata={'kind': 'enum', 'choices': TenseType})


@dataclass(frozen=True)
class ActionFact(Predicate):
    code: Optional[str] = None
    semantic_type: Optional[str] = field(default=None, metadata={'kind': 'semcode', 'key': 'code', 'required': True})
    verb: Optional[str] = _text(required=True)
    negation: bool = _negation()
    tense: Optional[str] = _tense()
    tense_type: Optional[str] = _tense_type()
    subject: object = field(default=None, metadata={'kind': 'ref', 'namespace': 'entity', 'required': True})
    direct_object: object = field(default=None, metadata={'kind': 'object'})
    indirect_object: object = _ref('entity')
    preposition: Optional[str] = _text()
    complement: Optional[str] = _text()
    place: object = _ref('place')
    time: object = _ref('time')
    purpose: Optional[str] = _text()
    way: Optional[str] = _text()

    kind = PredicateKind.ACTION


@dataclass(frozen=True)
class EventFact(Predicate):
    code: Optional[str] = None
    verb: Optional[str] = _text(required=True)
    scale: Optional[str] = _text(required=True)
    subject: object = field(default=None, metadata={'kind': 'ref', 'namespace': 'entity', 'required': True})
    negation: bool = _negation()
    tense: Optional[str] = _tense()
    tense_type: Optional[str] = _tense_type()
    place: object = _ref('place')
    time: object = _ref('time')

    kind = PredicateKind.EVENT


@dataclass(frozen=True)
class CommFact(Predicate):
    """Job, message or intelligence predicate; `content` is opaque text."""
    code: Optional[str] = None
    kind: Optional[str] = field(default=None, metadata={'kind': 'comm_kind'})
    verb: Optional[str] = _text(required=True)
    subject: object = field(default=None, metadata={'kind': 'ref', 'namespace': 'entity', 'required': True})
    addressee: object = _ref('entity')
    content: Optional[str] = _text()
    way: Optional[str] = _text()
    negation: bool = _negation()
    tense: Optional[str] = _tense()
    tense_type: Optional[str] = _tense_type()
    place: object = _ref('place')
    time: object = _ref('time')

    def populated(self):
        return super().populated() - {'kind'}


# ==========
# LEXICON
# ==========

class VerbForm(NamedTuple):
    """Entry of the inflection table. Base forms carry no tense."""
    lemma: str
    tense: Optional[str] = None
    tense_type: Optional[str] = None


@dataclass(frozen=True)
class QuestionTarget:
    target: str
    attribute: Optional[str] = None

    def __str__(self):
        if self.attribute:
            return f'{self.target}({self.attribute})'
        return str(self.target)


@dataclass(frozen=True)
class Lexicon:
    verb_codes: dict = field(default_factory=dict)
    verb_scales: dict = field(default_factory=dict)
    synonym_groups: tuple = ()
    interrogatives: dict = field(default_factory=dict)
    auxiliaries: dict = field(default_factory=dict)
    forms: dict = field(default_factory=dict)
    prepositions: dict = field(default_factory=dict)
    adverbs: frozenset = frozenset()
    determiners: frozenset = frozenset()
    pronouns: frozenset = frozenset()
    titles: frozenset = frozenset()

    DEFAULT_SCALE = 'personal'

    @property
    def longest_interrogative(self):
        return max((len(phrase.split()) for phrase in self.interrogatives), default=1)

    def verb_form(self, surface):
        """Inflection lookup: base forms first, then the inflection table."""
        if surface in self.verb_codes:
            return VerbForm(surface)
        return self.forms.get(surface)

    def scale_of(self, lemma):
        return self.verb_scales.get(lemma, self.DEFAULT_SCALE)

    def group_of(self, lemma):
        for index, group in enumerate(self.synonym_groups):
            if lemma in group:
                return index
        return None


def classify_verb(lemma, lexicon):
    try:
        return SemanticCode(lexicon.verb_codes[lemma])
    except KeyError:
        raise UnknownVerb(lemma) from None


def classify_code(code):
    return CODE_KINDS[SemanticCode(code)]


def verbs_synonymous(a, b, lexicon):
    for lemma in (a, b):
        if lemma not in lexicon.verb_codes:
            raise UnknownVerb(lemma)
    if a == b:
        return True
    group = lexicon.group_of(a)
    return group is not None and group == lexicon.group_of(b)
