"""Identification of objects.

Each algorithm compares a predicate taken from a question (always the first
argument) with a predicate from the fact base and decides whether both denote
the same object. Branches follow a first-match ladder keyed on which fields the
question populates; a question that fits no branch stays UNDECIDED.

Every verdict is logged at DEBUG together with the branch that produced it.
"""
import logging
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import replace
from typing import NamedTuple

from django.db import models

from .exceptions import DanglingReference, EmptyQuery, KindMismatch, RecordNotFound
from .models import (EntityRecord, PersonRecord, PlaceRecord, TimeRecord, fold,
                     fold_designation, fold_number)

logger = logging.getLogger(__name__)


class IdVerdict(models.TextChoices):
    IDENTICAL = 'IDENTICAL', 'identical'
    NOT_IDENTICAL = 'NOT_IDENTICAL', 'not identical'
    UNDECIDED = 'UNDECIDED', 'undecided'


class Branch(NamedTuple):
    predicate: str
    record: str
    branch: str
    verdict: str


_trail = ContextVar('identification_trail', default=None)


@contextmanager
def record_branches():
    """Collect every identification decided inside the block."""
    trail = []
    token = _trail.set(trail)
    try:
        yield trail
    finally:
        _trail.reset(token)


def _decide(predicate, db, branch, verdict):
    logger.debug(
        '%s identification', predicate,
        extra={'record': db.code, 'branch': branch, 'verdict': str(verdict)},
    )
    trail = _trail.get()
    if trail is not None:
        trail.append(Branch(predicate, db.code or '?', branch, verdict))
    return verdict


# ==============
# FIELD EQUALITY
# ==============

def _same_field(record_class, name, query_value, db_value):
    """One query field coincides with the database field. A field absent from
    the database record never coincides."""
    if db_value in (None, (), ''):
        return False
    meta = record_class.schema()[name]
    kind = meta['kind']
    if name == 'designation':
        return fold_designation(query_value) == fold_designation(db_value)
    if kind == 'text' and meta.get('number'):
        return fold_number(query_value) == fold_number(db_value)
    if kind == 'text':
        return fold(query_value) == fold(db_value)
    if kind == 'texts':
        return {fold(item) for item in query_value} <= {fold(item) for item in db_value}
    if kind == 'pairs':
        return all(_has_property(pair, db_value) for pair in query_value)
    return query_value == db_value


def _has_property(pair, db_pairs):
    attribute, value = pair
    for db_attribute, db_value in db_pairs:
        if fold(value) != fold(db_value):
            continue
        if attribute == EntityRecord.ANY_ATTRIBUTE or fold(attribute) == fold(db_attribute):
            return True
    return False


def _compare(predicate, query, db, names, branch):
    record_class = type(query)
    coincide = all(
        _same_field(record_class, name, getattr(query, name), getattr(db, name))
        for name in sorted(names)
    )
    verdict = IdVerdict.IDENTICAL if coincide else IdVerdict.NOT_IDENTICAL
    return _decide(predicate, db, branch, verdict)


def _populated(query):
    populated = query.populated()
    if not populated:
        raise EmptyQuery(f"{type(query).__name__} query has no populated field")
    return populated


# ========
# PERSONS
# ========

def identify_person(query, db):
    populated = _populated(query)
    names = populated & PersonRecord.NAME_FIELDS

    if populated in ({'first_name'}, {'last_name'}):
        return _compare('person', query, db, populated, 'first or last name only')
    if populated == PersonRecord.NAME_FIELDS:
        return _compare('person', query, db, populated, 'first and last name')
    if names and populated - names:
        return _compare('person', query, db, populated, 'name and property')
    if populated == {'designation'}:
        return _compare('person', query, db, populated, 'designation only')
    return _decide('person', db, 'no branch', IdVerdict.UNDECIDED)


# =======
# PLACES
# =======

TOWN = 'territorial_name'
STREET = 'location_name'
HOUSE = 'construction_name'
APARTMENT = 'final_location'
IN_HOUSE = 'construction_detail'

PLACE_LADDER = (
    ('town', frozenset({TOWN})),
    ('town and street', frozenset({TOWN, STREET})),
    ('town, street and house', frozenset({TOWN, STREET, HOUSE})),
    ('town, street, house and apartment', frozenset({TOWN, STREET, HOUSE, APARTMENT})),
    ('town, street, house and location in house', frozenset({TOWN, STREET, HOUSE, IN_HOUSE})),
)


def identify_place(query, db):
    populated = _populated(query)
    for branch, pattern in PLACE_LADDER:
        if populated == pattern:
            return _compare('place', query, db, pattern, branch)
    return _decide('place', db, 'no branch', IdVerdict.UNDECIDED)


# ======
# TIMES
# ======

YEAR_SEASON_MONTH = frozenset({'year', 'season', 'month'})
DATE = frozenset({'year', 'month', 'day_in_month'})
DATE_AND_HOUR = DATE | {'hours', 'part_of_day'}


def identify_time(query, db):
    populated = _populated(query)

    if populated == {'year'}:
        return _compare('time', query, db, populated, 'year')
    if 'year' in populated and len(populated) > 1 and populated <= YEAR_SEASON_MONTH:
        return _compare('time', query, db, populated, 'year and season or month')
    if populated == DATE:
        return _compare('time', query, db, populated, 'year, month and day')
    if DATE < populated <= DATE_AND_HOUR:
        return _compare('time', query, db, populated, 'date and hours or part of day')
    return _decide('time', db, 'no branch', IdVerdict.UNDECIDED)


# ===========================
# ORGANIZATIONS, THINGS, MACHINES
# ===========================

def identify_entity(query, db):
    if not isinstance(db, EntityRecord):
        raise KindMismatch(f"{type(db).__name__} is not an organization, thing or machine")
    if query.kind is not None and query.kind != db.kind:
        raise KindMismatch(f"cannot identify a {query.kind} with a {db.kind}")
    populated = _populated(query)
    identifiers = populated & {'name', 'designation'}

    if populated == {'name'}:
        return _compare('entity', query, db, populated, 'name only')
    if populated == {'designation'}:
        return _compare('entity', query, db, populated, 'designation only')
    if identifiers and len(populated) > 1:
        return _compare('entity', query, db, populated, 'name or designation and property')
    return _decide('entity', db, 'no branch', IdVerdict.UNDECIDED)


def _as_person(query):
    """Generic noun group read as a person, or None when it carries what a
    person record cannot hold."""
    if query.populated() - {'name', 'designation'}:
        return None
    names = (query.name or '').split()
    return PersonRecord(
        designation=query.designation,
        first_name=' '.join(names[:-1]) or None,
        last_name=names[-1] if names else None,
    )


def identify(query, db):
    """Dispatch on the record types. Different types never identify."""
    if isinstance(query, PlaceRecord) and isinstance(db, PlaceRecord):
        return identify_place(query, db)
    if isinstance(query, TimeRecord) and isinstance(db, TimeRecord):
        return identify_time(query, db)
    if isinstance(query, PersonRecord) and isinstance(db, PersonRecord):
        return identify_person(query, db)
    if isinstance(query, EntityRecord) and isinstance(db, EntityRecord):
        if query.is_generic:
            query = replace(query, kind=db.kind)
        if query.kind == db.kind:
            return identify_entity(query, db)
    if isinstance(query, EntityRecord) and query.is_generic and isinstance(db, PersonRecord):
        person = _as_person(query)
        if person is not None:
            return identify_person(person, db)
    return _decide(type(query).__name__, db, 'different types', IdVerdict.NOT_IDENTICAL)


def identify_slot(query_slot, db_ref, fb):
    """Wildcard wrapper: an absent question slot accepts anything, an absent
    database slot confirms nothing."""
    if query_slot is None:
        return True
    if db_ref is None:
        return False
    code = getattr(db_ref, 'code', db_ref)
    try:
        if isinstance(query_slot, PlaceRecord):
            record = fb.places[code]
        elif isinstance(query_slot, TimeRecord):
            record = fb.times[code]
        else:
            record = fb.entity(code)
    except (KeyError, RecordNotFound):
        raise DanglingReference(code) from None
    if isinstance(query_slot, EntityRecord) and isinstance(query_slot.owner, (PersonRecord, EntityRecord)):
        return _identify_owned(query_slot, record, fb)
    return identify(query_slot, record) == IdVerdict.IDENTICAL


def _identify_owned(query, record, fb):
    """A possessive noun group names the record whose owner identifies with
    the possessor. Failing that the record may carry the whole phrase as its
    designation, as the ship's company does."""
    owned = replace(query, owner=None)
    if isinstance(record, EntityRecord) and record.owner is not None \
            and identify(owned, record) == IdVerdict.IDENTICAL \
            and identify_slot(query.owner, record.owner, fb):
        return True
    literal = replace(owned, designation=f"{query.owner}'s {query.designation}") \
        if query.designation else owned
    return identify(literal, record) == IdVerdict.IDENTICAL
