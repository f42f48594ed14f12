from dataclasses import replace

from django.core.exceptions import MultipleObjectsReturned, ObjectDoesNotExist
from django.test import SimpleTestCase

from qa.exceptions import AmbiguousCode, DanglingReference, DuplicateCode, ParseError, RecordNotFound
from qa.facts import (FactBase, dump_facts, load_facts, parse_facts, resolve, select_actions,
                      select_all_events, select_comms, select_events_by_scale)
from qa.models import (ActionFact, CommFact, EntityKind, PartOfDay, PersonRecord, PlaceRecord,
                       PredicateKind, Ref, SemanticCode, Sex, Tense, TenseType)

from .utils import FACTS_PATH, english, sea_story

SMALL = '''
person ann { first_name="Ann" last_name="Lee" sex=female other_tongues=["French", "German"] }
thing car { designation="car" properties=[colour:"red"] owner=ann quantity=1 }
place kiev { territorial_name="Kiev" construction_name="05" }
time t1 { year=1990 month=may day_in_month=3 }
action a1 { code=GO verb="go" tense=past subject=ann place=kiev time=t1 }
action a2 { code=GRASP verb="take" tense=past negation=true subject=ann direct_object=car }
action a3 { code=DO verb="sing" tense=present subject=ann direct_object="a song" }
event e1 { verb="sink" scale="natural" tense=past subject=car }
message m1 { verb="say" tense=past subject=ann addressee=ann content="hello" way="quietly" }
'''


class SeaStoryTests(SimpleTestCase):

    def test_loads_every_block(self):
        fb = sea_story()
        self.assertEqual(len(fb.persons), 5)
        self.assertEqual(len(fb.entities), 4)
        self.assertEqual(len(fb), 21)
        self.assertEqual(fb.persons['brown'].additional_data, 'Mister')
        self.assertEqual(fb.entities['company'].kind, EntityKind.ORGANIZATION)
        self.assertEqual(fb.times['t_morning'].part_of_day, PartOfDay.MORNING)

    def test_facts_keep_file_order(self):
        codes = [fact.code for fact in sea_story().all_facts()]
        self.assertEqual(codes[:3], ['a_mate', 'a_came_up', 'i_heard'])
        self.assertEqual(codes[-1], 'a_voyage')

    def test_facts_added_in_code_come_last(self):
        fb = sea_story()
        added = ActionFact(code='a_added', semantic_type=SemanticCode.GO, verb='sail',
                           subject='captain', tense=Tense.PAST)
        extended = replace(fb, actions=(*fb.actions, added))
        codes = [fact.code for fact in extended.all_facts()]
        self.assertEqual(codes[0], 'a_mate')
        self.assertEqual(codes[-2:], ['a_voyage', 'a_added'])

    def test_direct_objects_are_references_or_text(self):
        fb = sea_story()
        self.assertEqual(fb.facts_by_code['a_reach'].direct_object, Ref('boat'))
        self.assertEqual(fb.facts_by_code['a_opened'].direct_object, 'his eyes')

    def test_dump_round_trips(self):
        fb = sea_story()
        again = parse_facts(dump_facts(fb), 'dumped', english())
        self.assertEqual(again, fb)
        self.assertEqual(dump_facts(again), dump_facts(fb))


class ReaderTests(SimpleTestCase):

    def test_field_values(self):
        fb = parse_facts(SMALL)
        ann = fb.persons['ann']
        self.assertEqual(ann.sex, Sex.FEMALE)
        self.assertEqual(ann.other_tongues, ('French', 'German'))
        self.assertEqual(fb.entities['car'].properties, (('colour', 'red'),))
        self.assertEqual(fb.entities['car'].owner, 'ann')
        self.assertEqual(fb.times['t1'].day_in_month, 3)
        a2 = fb.facts_by_code['a2']
        self.assertTrue(a2.negation)
        self.assertEqual(a2.semantic_type, SemanticCode.GRASP)
        self.assertEqual(a2.tense_type, TenseType.INDEFINITE)
        self.assertEqual(fb.facts_by_code['m1'].kind, PredicateKind.MESSAGE)

    def test_small_base_round_trips(self):
        fb = parse_facts(SMALL)
        self.assertEqual(parse_facts(dump_facts(fb)), fb)

    def test_empty_file(self):
        fb = parse_facts('# nothing here\n')
        self.assertEqual(len(fb), 0)
        self.assertEqual(dump_facts(fb), '')

    def assertFactError(self, text, line, fragment, error=ParseError, lexicon=None):
        with self.assertRaises(error) as caught:
            parse_facts(text, 'bad.facts', lexicon)
        self.assertEqual(caught.exception.line, line)
        self.assertIn(fragment, str(caught.exception))
        self.assertTrue(str(caught.exception).startswith(f'bad.facts:{line}:'))

    def test_duplicate_code(self):
        self.assertFactError('person a { }\nperson a { }\n', 2, "duplicate person code 'a'", DuplicateCode)

    def test_same_code_in_two_namespaces_is_allowed(self):
        fb = parse_facts('person a { }\nplace a { }\n')
        self.assertIn('a', fb.persons)
        self.assertIn('a', fb.places)

    def test_dangling_reference(self):
        self.assertFactError('person a { }\naction x { code=GO verb="go" tense=past subject=a\n'
                             '  place=nowhere }\n', 3, "'nowhere'", DanglingReference)

    def test_ambiguous_reference(self):
        self.assertFactError('person a { }\nthing a { }\n'
                             'action x { code=GO verb="go" tense=past subject=a }\n',
                             3, 'ambiguous reference')

    def test_unknown_field(self):
        self.assertFactError('person a {\n  colour="red" }\n', 2, "unknown field 'colour'")

    def test_required_field(self):
        self.assertFactError('person a { }\naction x { code=GO verb="go" subject=a }\n',
                             2, "lacks required field 'tense'")

    def test_message_code_cannot_form_an_action(self):
        self.assertFactError('person a { }\naction x { code=MESSAGE verb="say" tense=past subject=a }\n',
                             2, 'does not form an action predicate')

    def test_out_of_range_time(self):
        self.assertFactError('time t { hours=25 }\n', 1, 'hours must lie within 0-23')

    def test_bad_enum(self):
        self.assertFactError('person a { sex=robot }\n', 1, "'robot' is not a valid sex")

    def test_syntax_error(self):
        self.assertFactError('person a {\n  sex=\n}\n', 3, 'unexpected')

    def test_verbs_checked_against_the_lexicon(self):
        self.assertFactError('person a { }\naction x { code=GO verb="fly" tense=past subject=a }\n',
                             2, "unknown verb 'fly'", lexicon=english())
        self.assertFactError('person a { }\naction x { code=GRASP verb="go" tense=past subject=a }\n',
                             2, 'does not form this predicate', lexicon=english())
        self.assertFactError('person a { }\njob x { verb="say" tense=past subject=a }\n',
                             2, 'does not form this predicate', lexicon=english())

    def test_missing_file(self):
        with self.assertRaises(FileNotFoundError):
            load_facts(FACTS_PATH.with_name('absent.facts'))


class SelectionTests(SimpleTestCase):

    def test_resolve(self):
        fb = sea_story()
        self.assertEqual(resolve(fb, 'brown').last_name, 'Brown')
        self.assertEqual(resolve(fb, 'boat', 'entity').designation, 'boat')
        self.assertIsInstance(resolve(fb, 'a_mate', 'fact'), ActionFact)
        with self.assertRaises(RecordNotFound):
            resolve(fb, 'boat', 'person')
        with self.assertRaises(ObjectDoesNotExist):
            resolve(fb, 'nobody')

    def test_code_in_two_namespaces_needs_a_namespace(self):
        fb = FactBase(persons={'x': PersonRecord(code='x', last_name='X')},
                      places={'x': PlaceRecord(code='x', territorial_name='Kiev')})
        with self.assertRaises(AmbiguousCode) as caught:
            resolve(fb, 'x')
        self.assertIsInstance(caught.exception, MultipleObjectsReturned)
        self.assertEqual(caught.exception.namespaces, ('person', 'place'))
        self.assertIsInstance(resolve(fb, 'x', 'place'), PlaceRecord)
        self.assertEqual(resolve(fb, 'x', 'person').last_name, 'X')

    def test_select_actions_by_four_fields(self):
        fb = sea_story()
        be = select_actions(fb, SemanticCode.BE, False, Tense.PAST, TenseType.INDEFINITE)
        self.assertEqual([fact.code for fact in be], ['a_mate', 'a_asleep', 'a_aboard'])
        self.assertEqual(select_actions(fb, SemanticCode.BE, True, Tense.PAST, TenseType.INDEFINITE), [])
        self.assertEqual(select_actions(fb, SemanticCode.GO, False, Tense.FUTURE, TenseType.INDEFINITE), [])
        with self.assertRaises(ValueError):
            select_actions(fb, SemanticCode.MESSAGE, False, Tense.PAST, TenseType.INDEFINITE)

    def test_select_events(self):
        fb = sea_story()
        self.assertEqual([event.code for event in select_events_by_scale(fb, 'Personal')], ['e_woke'])
        self.assertEqual(select_events_by_scale(fb, 'natural'), [])
        self.assertEqual(len(select_all_events(fb)), 1)

    def test_select_comms(self):
        fb = sea_story()
        intelligence = select_comms(fb, PredicateKind.INTELLIGENCE)
        self.assertEqual([comm.code for comm in intelligence], ['i_heard', 'i_saw', 'i_looked', 'i_boat'])
        self.assertTrue(all(isinstance(comm, CommFact) for comm in intelligence))
        self.assertEqual(select_comms(fb, PredicateKind.JOB), [])
        with self.assertRaises(ValueError):
            select_comms(fb, PredicateKind.EVENT)
