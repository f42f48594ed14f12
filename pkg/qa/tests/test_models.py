from django.test import SimpleTestCase

from qa.exceptions import UnknownVerb
from qa.models import (ActionFact, CommFact, EntityKind, EntityRecord, PersonRecord, PlaceRecord,
                       PredicateKind, SemanticCode, Tense, TimeRecord, VerbForm, classify_code,
                       classify_verb, fold, fold_designation, fold_number, verbs_synonymous)

from .utils import english


class TextFoldingTests(SimpleTestCase):

    def test_fold_ignores_case_and_spacing(self):
        self.assertEqual(fold('  Ship\'s   COMPANY '), "ship's company")

    def test_designation_drops_a_leading_article(self):
        self.assertEqual(fold_designation('The man'), 'man')
        self.assertEqual(fold_designation('a mate'), 'mate')
        self.assertEqual(fold_designation('an'), 'an')

    def test_numbers_ignore_leading_zeros(self):
        self.assertEqual(fold_number('007'), '7')
        self.assertEqual(fold_number('000'), '0')


class RecordTests(SimpleTestCase):

    def test_populated_skips_code_and_empty_fields(self):
        person = PersonRecord(code='brown', last_name='Brown', other_tongues=())
        self.assertEqual(person.populated(), {'last_name'})

    def test_entity_kind_is_not_a_populated_field(self):
        thing = EntityRecord(kind=EntityKind.THING, designation='boat')
        self.assertEqual(thing.populated(), {'designation'})
        self.assertFalse(thing.is_generic)
        self.assertTrue(EntityRecord(designation='boat').is_generic)

    def test_time_ranges_are_checked(self):
        with self.assertRaises(ValueError):
            TimeRecord(hours=24)
        with self.assertRaises(ValueError):
            TimeRecord(day_in_month=0)
        self.assertEqual(TimeRecord(hours=23).hours, 23)

    def test_rendering(self):
        self.assertEqual(str(PersonRecord(first_name='John', last_name='Brown')), 'John Brown')
        self.assertEqual(str(PersonRecord(designation='the man', last_name='X')), 'the man')
        self.assertEqual(str(PlaceRecord(territorial_name='Kiev', location_name='Khreshchatyk',
                                         location_kind='street')), 'Kiev Khreshchatyk street')

    def test_fact_schema_keys_the_semantic_type_as_code(self):
        self.assertEqual(ActionFact.schema()['semantic_type']['key'], 'code')
        self.assertNotIn('code', ActionFact.schema())

    def test_comm_kind_is_not_populated(self):
        comm = CommFact(kind=PredicateKind.MESSAGE, verb='say', tense=Tense.PAST)
        self.assertNotIn('kind', comm.populated())


class VerbClassificationTests(SimpleTestCase):

    def test_classify_verb(self):
        self.assertEqual(classify_verb('reach', english()), SemanticCode.GO)
        self.assertEqual(classify_verb('cry out', english()), SemanticCode.MESSAGE)
        with self.assertRaises(UnknownVerb):
            classify_verb('frobnicate', english())

    def test_classify_code(self):
        self.assertEqual(classify_code(SemanticCode.GRASP), PredicateKind.ACTION)
        self.assertEqual(classify_code(SemanticCode.BE), PredicateKind.ACTION)
        self.assertEqual(classify_code(SemanticCode.DO), PredicateKind.ACTION)
        self.assertEqual(classify_code(SemanticCode.JOB), PredicateKind.JOB)
        self.assertEqual(classify_code(SemanticCode.MESSAGE), PredicateKind.MESSAGE)
        self.assertEqual(classify_code(SemanticCode.FEEL), PredicateKind.INTELLIGENCE)
        self.assertEqual(classify_code(SemanticCode.CREATE), PredicateKind.INTELLIGENCE)
        self.assertEqual(classify_code(SemanticCode.CHANGE), PredicateKind.EVENT)

    def test_every_code_has_a_kind(self):
        for code in SemanticCode:
            self.assertIn(classify_code(code), PredicateKind.values)

    def test_synonyms(self):
        self.assertTrue(verbs_synonymous('say', 'speak', english()))
        self.assertTrue(verbs_synonymous('take', 'take', english()))
        self.assertTrue(verbs_synonymous('catch', 'grasp', english()))
        self.assertFalse(verbs_synonymous('say', 'tell', english()))
        with self.assertRaises(UnknownVerb):
            verbs_synonymous('say', 'whisper', english())

    def test_verb_forms(self):
        lexicon = english()
        self.assertEqual(lexicon.verb_form('reach'), VerbForm('reach'))
        self.assertEqual(lexicon.verb_form('reached'), VerbForm('reach', Tense.PAST, 'indefinite'))
        self.assertIsNone(lexicon.verb_form('boat'))
        self.assertEqual(lexicon.scale_of('sink'), 'natural')
        self.assertEqual(lexicon.scale_of('wake'), 'personal')
