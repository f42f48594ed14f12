from qa.engine import SlotMask, answer, compare_slots, render_machine, select_candidates, \
    selection_matches, target_slot
from qa.exceptions import QAError, QuestionSyntaxError
from qa.identity import record_branches
from qa.management.base import QACommand
from qa.parser import build_query, parse_question, tokenize

INFERENCE_STUB = 'inference stub: no fact matched, deduction would be required'


class Command(QACommand):
    help = 'Show how a question is parsed, which facts are selected and how each slot compares'

    def add_arguments(self, parser):
        parser.add_argument('question')
        super().add_arguments(parser)

    def handle(self, *args, **options):
        config = self.configure(options)
        self.lexicon, self.fb = self.load(config)
        try:
            self.explain(options['question'])
        except QuestionSyntaxError as error:
            self.stdout.write(f'SyntaxError: {error}')
        except QAError as error:
            self.stdout.write(f'{type(error).__name__}: {error}')

    def section(self, title):
        self.stdout.write(self.style.MIGRATE_HEADING(f'{title}:'))

    def explain(self, question):
        form = parse_question(tokenize(question), self.lexicon)
        self.section('Question form')
        for label, value in form.describe():
            self.stdout.write(f'  {label}: {value}')

        query = build_query(form, self.lexicon)
        self.section('Query predicate')
        self.stdout.write(f'  kind: {query.kind}')
        self.stdout.write(f'  questioned slot: {query.questioned_slot}')
        for name in sorted(query.pattern.populated()):
            self.stdout.write(f'  {name}: {getattr(query.pattern, name)}')
        if query.filler_constraint is not None:
            self.stdout.write(f'  filler constraint: {query.filler_constraint}')

        label, candidates = select_candidates(query, self.fb)
        mask = SlotMask.full() if query.is_general else \
            SlotMask.without(target_slot(query, type(query.pattern)))
        self.section(f'Candidates ({label})')
        if not candidates:
            self.stdout.write('  none')
        for fact in candidates:
            with record_branches() as trail:
                verdicts = compare_slots(query, fact, mask, self.fb, self.lexicon) \
                    if selection_matches(query, fact) else {}
            hit = bool(verdicts) and all(verdicts.values())
            self.stdout.write(f'  {fact.code}: {"match" if hit else "no match"}')
            for slot, verdict in verdicts.items():
                self.stdout.write(f'    {slot.label}: {"yes" if verdict else "no"}')
            for step in trail:
                self.stdout.write(f'      {step.predicate} {step.record}: {step.branch} -> {step.verdict}')
        if mask.excluded is not None:
            self.stdout.write(f'  masked slot: {mask.excluded.label}')

        result = answer(query, self.fb, self.lexicon)
        self.section('Answer')
        self.stdout.write(f'  {render_machine(result)}')
        if result.inference_required:
            self.stdout.write(INFERENCE_STUB)
