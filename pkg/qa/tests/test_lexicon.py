from django.test import SimpleTestCase

from qa.exceptions import DuplicateCode, ParseError
from qa.lexicon import parse_lexicon
from qa.models import QuestionTarget, SemanticCode, Target, Tense, TenseType

from .utils import english


class ShippedLexiconTests(SimpleTestCase):

    def test_verbs_and_scales(self):
        lexicon = english()
        self.assertEqual(lexicon.verb_codes['be'], SemanticCode.BE)
        self.assertEqual(lexicon.verb_codes['come up'], SemanticCode.GO)
        self.assertEqual(lexicon.verb_scales['rise'], 'social')

    def test_interrogatives(self):
        interrogatives = english().interrogatives
        self.assertEqual(interrogatives['who'], QuestionTarget(Target.SUBJECT))
        self.assertEqual(interrogatives['how many'], QuestionTarget(Target.SUBJECT_PROPERTY, 'quantity'))
        self.assertEqual(interrogatives['for what purpose'], QuestionTarget(Target.PURPOSE))
        self.assertEqual(english().longest_interrogative, 3)

    def test_auxiliaries_carry_tense(self):
        will = english().auxiliaries['will']
        self.assertEqual((will.tense, will.tense_type), (Tense.FUTURE, TenseType.INDEFINITE))
        has = english().auxiliaries['has']
        self.assertEqual((has.lemma, has.tense_type), ('have', TenseType.PERFECT))

    def test_closed_classes(self):
        lexicon = english()
        self.assertEqual(lexicon.prepositions['through'], Target.WAY)
        self.assertEqual(lexicon.prepositions['for'], Target.PURPOSE)
        self.assertIn('loudly', lexicon.adverbs)
        self.assertIn('him', lexicon.pronouns)
        self.assertIn('mister', lexicon.titles)
        self.assertIn('some', lexicon.determiners)


class LexiconErrorTests(SimpleTestCase):

    def assertParseError(self, text, line, fragment, error=ParseError):
        with self.assertRaises(error) as caught:
            parse_lexicon(text, 'test.lex')
        self.assertEqual(caught.exception.line, line)
        self.assertIn(fragment, str(caught.exception))
        self.assertTrue(str(caught.exception).startswith('test.lex:'))

    def test_unknown_semantic_code(self):
        self.assertParseError('verb go GO\nverb fly SOAR\n', 2, "unknown semantic code 'SOAR'")

    def test_duplicate_verb(self):
        self.assertParseError('verb go GO\nverb go GO\n', 2, 'defined twice', DuplicateCode)

    def test_synonyms_must_share_a_code(self):
        self.assertParseError('verb go GO\nverb say MESSAGE\nsynonyms go,say\n', 3, 'mixes semantic codes')

    def test_synonyms_must_be_known_verbs(self):
        self.assertParseError('verb go GO\nsynonyms go,walk\n', 2, "'walk' is not a known verb")

    def test_prepositions_fill_adverbial_slots_only(self):
        self.assertParseError('preposition of SUBJECT\n', 1, 'prepositions cannot fill SUBJECT')

    def test_syntax_error_is_located(self):
        self.assertParseError('verb go GO\nverb\n', 2, 'unexpected')

    def test_interrogatives_hold_at_most_three_words(self):
        self.assertParseError('interrogative "for what good purpose" PURPOSE\n', 1, 'one to three words')

    def test_minimal_lexicon_without_trailing_newline(self):
        lexicon = parse_lexicon('verb go GO\nform went go past indefinite')
        self.assertEqual(lexicon.verb_form('went').lemma, 'go')
