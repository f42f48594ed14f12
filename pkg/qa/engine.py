"""Answer generation.

General questions are answered Yes or No by looking for one fact that matches
the query predicate slot by slot. Special questions mask the questioned slot,
collect every matching fact and render the masked slot of each. Candidates are
pre-selected by semantic type, negation, tense and tense type (actions), by
kind (job, message, intelligence) or by scale (events).
"""
import logging
from dataclasses import dataclass, replace
from typing import Optional

from django.db import models

from .exceptions import UnknownVerb, UnsupportedConstruction
from .facts import resolve, select_actions, select_comms, select_events_by_scale
from .identity import identify_slot
from .models import (ActionFact, CommFact, EntityRecord, EventFact, PersonRecord, PredicateKind,
                     Ref, SemanticCode, Target, fold, fold_designation,
                     verbs_synonymous)
from .parser import build_query, parse_question, tokenize

logger = logging.getLogger(__name__)

CANNOT_EXECUTE = 'The question can not be executed'
CANNOT_INFER = 'The question can not be answered without inference'


class AnswerKind(models.TextChoices):
    YES = 'YES', 'Yes'
    NO = 'NO', 'No'
    FILLERS = 'FILLERS', 'fillers'
    CANNOT = 'CANNOT', 'can not answer'


class Slot(models.TextChoices):
    """Comparable slots of a fact; each value is the fact field it reads."""
    VERB = 'verb', 'verb'
    SUBJECT = 'subject', 'subject'
    DIRECT_OBJECT = 'direct_object', 'direct object'
    INDIRECT_OBJECT = 'indirect_object', 'indirect object'
    COMPLEMENT = 'complement', 'complement'
    ADDRESSEE = 'addressee', 'addressee'
    CONTENT = 'content', 'content'
    PLACE = 'place', 'place'
    TIME = 'time', 'time'
    PURPOSE = 'purpose', 'purpose'
    WAY = 'way', 'way'


FACT_SLOTS = {
    ActionFact: (Slot.VERB, Slot.SUBJECT, Slot.DIRECT_OBJECT, Slot.INDIRECT_OBJECT,
                 Slot.COMPLEMENT, Slot.PLACE, Slot.TIME, Slot.PURPOSE, Slot.WAY),
    EventFact: (Slot.VERB, Slot.SUBJECT, Slot.PLACE, Slot.TIME),
    CommFact: (Slot.VERB, Slot.SUBJECT, Slot.ADDRESSEE, Slot.CONTENT, Slot.WAY,
               Slot.PLACE, Slot.TIME),
}

TEXT_SLOTS = frozenset({Slot.COMPLEMENT, Slot.CONTENT, Slot.PURPOSE, Slot.WAY})
EXISTENCE_SLOTS = (Slot.SUBJECT, Slot.PLACE, Slot.TIME)

# Questioned slot per target and fact type. SUBJECT_PROPERTY masks nothing:
# the subject is compared and its property extracted.
TARGET_SLOTS = {
    Target.SUBJECT: {ActionFact: Slot.SUBJECT, EventFact: Slot.SUBJECT, CommFact: Slot.SUBJECT},
    Target.DIRECT_OBJECT: {ActionFact: Slot.DIRECT_OBJECT, CommFact: Slot.CONTENT},
    Target.INDIRECT_OBJECT: {ActionFact: Slot.INDIRECT_OBJECT, CommFact: Slot.ADDRESSEE},
    Target.TIME: {ActionFact: Slot.TIME, EventFact: Slot.TIME, CommFact: Slot.TIME},
    Target.PLACE: {ActionFact: Slot.PLACE, EventFact: Slot.PLACE, CommFact: Slot.PLACE},
    Target.WAY: {ActionFact: Slot.WAY, CommFact: Slot.WAY},
    Target.PURPOSE: {ActionFact: Slot.PURPOSE},
}


@dataclass(frozen=True)
class SlotMask:
    """Slots compared by match_fact; at most one slot is left out."""
    excluded: Optional[str] = None

    @classmethod
    def full(cls):
        return cls()

    @classmethod
    def without(cls, slot):
        return cls(slot)

    def __contains__(self, slot):
        return slot != self.excluded


@dataclass(frozen=True)
class Answer:
    kind: str
    fillers: tuple = ()
    matched_fact_codes: tuple = ()
    inference_required: bool = False
    message: Optional[str] = None

    @property
    def machine_kind(self):
        if self.kind == AnswerKind.CANNOT and self.inference_required:
            return 'CANNOT_INFER'
        return str(self.kind)


# ==========
# MATCHING
# ==========

def _same_text(query_value, db_value):
    if query_value is None:
        return True
    if db_value is None:
        return False
    return fold_designation(query_value) == fold_designation(db_value)


def _surface(record):
    """Words of a generic noun group as they were written."""
    words = [value for _, value in getattr(record, 'properties', ())]
    words.append(getattr(record, 'designation', None) or getattr(record, 'name', None) or '')
    text = ' '.join(words)
    owner = getattr(record, 'owner', None)
    if isinstance(owner, EntityRecord):
        return f"{_surface(owner)}'s {text}"
    if isinstance(owner, PersonRecord):
        return f"{owner}'s {text}"
    return text


def _same_verb(query_verb, db_verb, lexicon):
    try:
        return verbs_synonymous(query_verb, db_verb, lexicon)
    except UnknownVerb:
        return fold(query_verb) == fold(db_verb)


def _same_object(query_value, db_value, fb):
    """Direct objects hold either a code reference or literal text."""
    if query_value is None:
        return True
    if db_value is None:
        return False
    if isinstance(db_value, Ref):
        return identify_slot(query_value, db_value, fb)
    if isinstance(query_value, EntityRecord) and query_value.is_generic:
        return fold_designation(_surface(query_value)) == fold_designation(db_value)
    return False


def compare_slots(query, fact, mask, fb, lexicon):
    """Verdict of every compared slot, in slot order."""
    verdicts = {}
    for slot in FACT_SLOTS[type(fact)]:
        if slot not in mask:
            continue
        query_value = getattr(query.pattern, slot.value)
        db_value = getattr(fact, slot.value)
        if slot == Slot.VERB:
            verdicts[slot] = _same_verb(query_value, db_value, lexicon)
        elif slot == Slot.DIRECT_OBJECT:
            verdicts[slot] = _same_object(query_value, db_value, fb)
        elif slot in TEXT_SLOTS:
            verdicts[slot] = _same_text(query_value, db_value)
        else:
            verdicts[slot] = identify_slot(query_value, db_value, fb)
    return verdicts


def selection_matches(query, fact):
    """The fields candidate selection filters on."""
    pattern = query.pattern
    if type(pattern) is not type(fact):
        return False
    if isinstance(fact, ActionFact) and fact.semantic_type != pattern.semantic_type:
        return False
    if isinstance(fact, CommFact) and fact.kind != pattern.kind:
        return False
    if isinstance(fact, EventFact) and fold(fact.scale) != fold(pattern.scale):
        return False
    return (fact.negation, fact.tense, fact.tense_type) == \
        (pattern.negation, pattern.tense, pattern.tense_type)


def match_fact(query, fact, mask, fb, lexicon):
    if not selection_matches(query, fact):
        return False
    return all(compare_slots(query, fact, mask, fb, lexicon).values())


def select_candidates(query, fb):
    """(label of the selection rule, candidate facts in file order)."""
    pattern = query.pattern
    if query.kind == PredicateKind.ACTION:
        label = 'BE selection' if pattern.semantic_type == SemanticCode.BE \
            else 'four-field action selection'
        facts = select_actions(fb, pattern.semantic_type, pattern.negation,
                               pattern.tense, pattern.tense_type)
    elif query.kind == PredicateKind.EVENT:
        label, facts = 'event scale selection', select_events_by_scale(fb, pattern.scale)
    else:
        label, facts = 'comm kind selection', select_comms(fb, query.kind)
    logger.debug('candidates selected', extra={'selection': label, 'candidates': len(facts)})
    return label, facts


# ==========
# ANSWERING
# ==========

def run_inference(query, fb):
    """Extension point for deduction; direct selection found nothing."""
    logger.debug('inference required', extra={'kind': str(query.kind),
                                               'target': str(query.questioned_slot)})
    return Answer(AnswerKind.CANNOT, inference_required=True, message=CANNOT_INFER)


def _exists_elsewhere(query, fb):
    """BE without a complement: the subject exists at that place and time if
    any job, message, intelligence or event fact says so."""
    for fact in fb.all_facts():
        if isinstance(fact, ActionFact):
            continue
        if all(identify_slot(getattr(query.pattern, slot.value), getattr(fact, slot.value), fb)
               for slot in EXISTENCE_SLOTS):
            return fact
    return None


def answer_general(query, fb, lexicon):
    _, candidates = select_candidates(query, fb)
    mask = SlotMask.full()
    hits = tuple(fact.code for fact in candidates if match_fact(query, fact, mask, fb, lexicon))
    if hits:
        return Answer(AnswerKind.YES, matched_fact_codes=hits)

    pattern = query.pattern
    if query.kind == PredicateKind.ACTION and pattern.semantic_type == SemanticCode.BE:
        if pattern.complement is None:
            fact = _exists_elsewhere(query, fb)
            if fact is not None:
                return Answer(AnswerKind.YES, matched_fact_codes=(fact.code,))
        return Answer(AnswerKind.NO)
    if query.kind == PredicateKind.ACTION:
        return run_inference(query, fb)
    return Answer(AnswerKind.NO)


def target_slot(query, fact_class):
    target = query.questioned_slot.target
    if target == Target.SUBJECT_PROPERTY:
        return None
    try:
        return TARGET_SLOTS[target][fact_class]
    except KeyError:
        raise UnsupportedConstruction(
            f"{fact_class.__name__} has no {Target(target).label}") from None


def slot_value(fact, slot, fb):
    """Resolved content of a fact slot: a record for references, text otherwise."""
    value = getattr(fact, slot.value)
    if value is None:
        return None
    meta = type(fact).schema()[slot.value]
    if meta['kind'] == 'ref':
        return fb.entity(value) if meta['namespace'] == 'entity' else resolve(fb, value, meta['namespace'])
    if isinstance(value, Ref):
        return fb.entity(value.code)
    return value


def subject_property(record, attribute, fb):
    """Value of a subject property: a record field or an attribute pair."""
    if isinstance(record, PersonRecord) and attribute == 'name':
        names = [name for name in (record.first_name, record.last_name) if name]
        return ' '.join(names) or None
    if attribute in type(record).schema():
        value = getattr(record, attribute)
        if value in (None, (), ''):
            return None
        meta = type(record).schema()[attribute]
        if meta['kind'] == 'ref':
            return fb.entity(value) if meta['namespace'] == 'entity' else resolve(fb, value, meta['namespace'])
        return value
    for name, value in getattr(record, 'properties', ()):
        if fold(name) == fold(attribute):
            return value
    return None


def render_answer(value, fb):
    """Text of a slot value. Records render through their own join rules."""
    if isinstance(value, Ref):
        value = fb.entity(value.code)
    return str(value)


def _constraint_holds(constraint, fact, slot, fb):
    if constraint is None:
        return True
    value = getattr(fact, slot.value)
    if type(fact).schema()[slot.value]['kind'] == 'ref':
        return identify_slot(constraint, value, fb)
    return _same_object(constraint, value, fb)


def answer_special(query, fb, lexicon):
    _, candidates = select_candidates(query, fb)
    slot = target_slot(query, type(query.pattern))
    mask = SlotMask.without(slot)
    fillers, codes = [], []
    for fact in candidates:
        if not match_fact(query, fact, mask, fb, lexicon):
            continue
        if slot is None:
            subject = slot_value(fact, Slot.SUBJECT, fb)
            value = subject_property(subject, query.questioned_slot.attribute, fb)
        else:
            if not _constraint_holds(query.filler_constraint, fact, slot, fb):
                continue
            value = slot_value(fact, slot, fb)
            attribute = query.questioned_slot.attribute
            if attribute is not None and value is not None:
                # "whose": the owner of the object in the slot
                value = subject_property(value, attribute, fb) if hasattr(value, 'schema') else None
        if value is None:
            continue
        text = render_answer(value, fb)
        codes.append(fact.code)
        if fold(text) not in {fold(filler) for filler in fillers}:
            fillers.append(text)
    if fillers:
        return Answer(AnswerKind.FILLERS, tuple(fillers), tuple(codes))
    if slot is None or query.questioned_slot.attribute is not None:
        return Answer(AnswerKind.CANNOT, message=CANNOT_EXECUTE)
    if query.retry_target is not None:
        logger.debug('retrying', extra={'target': str(query.retry_target)})
        retried = replace(query, pattern=query.retry_pattern or query.pattern,
                          questioned_slot=query.retry_target, retry_target=None, retry_pattern=None)
        return answer_special(retried, fb, lexicon)
    return run_inference(query, fb)


def answer(query, fb, lexicon):
    if query.is_general:
        return answer_general(query, fb, lexicon)
    return answer_special(query, fb, lexicon)


def ask(question, fb, lexicon):
    """Question text in, Answer out."""
    form = parse_question(tokenize(question), lexicon)
    return answer(build_query(form, lexicon), fb, lexicon)


# =========
# RENDERING
# =========

def render_plain(result):
    if result.kind == AnswerKind.YES:
        return 'Yes'
    if result.kind == AnswerKind.NO:
        return 'No'
    if result.kind == AnswerKind.FILLERS:
        return '; '.join(result.fillers)
    return result.message or CANNOT_EXECUTE


def render_machine(result):
    return f'ANSWER\t{result.machine_kind}\t{render_plain(result)}'
