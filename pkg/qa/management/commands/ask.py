import sys

from django.conf import settings
from django.core.management.base import CommandError

from qa.engine import CANNOT_EXECUTE, AnswerKind, Answer, ask, render_machine, render_plain
from qa.exceptions import QAError
from qa.identity import record_branches
from qa.management.base import BATCH_ERROR, QACommand

END_OF_INPUT = frozenset({'quit', 'exit'})
COMMENT = '#'


class Command(QACommand):
    help = 'Answer questions about a fact file, interactively or from a batch file'
    stealth_options = ('stdin',)

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--batch', help='Answer every question of this file and exit')
        parser.add_argument('--machine', action='store_true',
                            help='Print machine-readable answer lines')
        parser.add_argument('--trace', action='store_true',
                            help='Print matched fact codes and identification branches')

    def handle(self, *args, **options):
        config = self.configure(options)
        self.lexicon, self.fb = self.load(config)
        self.config = config
        if config.is_batch:
            self.batch(config.batch_path)
        else:
            self.repl(options.get('stdin') or sys.stdin)

    def answer(self, question):
        """Answer one question; question-level errors become a CANNOT answer."""
        with record_branches() as trail:
            try:
                result = ask(question, self.fb, self.lexicon)
            except QAError as error:
                result = Answer(AnswerKind.CANNOT, message=f'{CANNOT_EXECUTE}: {error}')
        return result, trail

    def emit(self, result, trail, machine):
        self.stdout.write(render_machine(result) if machine else render_plain(result))
        if self.config.trace:
            codes = ', '.join(result.matched_fact_codes) or '-'
            self.stdout.write(f'  matched: {codes}')
            for step in trail:
                self.stdout.write(
                    f'  {step.predicate} {step.record}: {step.branch} -> {step.verdict}')
        self.stdout.flush()

    def batch(self, path):
        try:
            lines = path.read_text(encoding='utf-8').splitlines()
        except (OSError, UnicodeDecodeError) as error:
            raise CommandError(f'cannot read batch file {path}: {error}',
                               returncode=BATCH_ERROR) from None
        for line in lines:
            question = line.strip()
            if not question or question.startswith(COMMENT):
                continue
            self.emit(*self.answer(question), machine=True)

    def repl(self, stream):
        prompt = getattr(settings, 'QA_PROMPT', '? ')
        while True:
            self.stdout.write(prompt, ending='')
            self.stdout.flush()
            line = stream.readline()
            if not line:
                self.stdout.write('')
                break
            question = line.strip()
            if question.lower() in END_OF_INPUT:
                break
            if not question:
                continue
            self.emit(*self.answer(question), machine=self.config.machine)
