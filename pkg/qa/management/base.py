import logging

from django.core.management.base import BaseCommand, CommandError

from qa.exceptions import QAError
from qa.facts import load_facts
from qa.forms import AskForm, OutputMode
from qa.lexicon import load_lexicon

logger = logging.getLogger(__name__)

LOAD_ERROR = 1
BATCH_ERROR = 2


class QACommand(BaseCommand):
    """Shared option handling: validate the options through AskForm, then load
    the lexicon and the fact base. Load failures exit with status 1."""

    def add_arguments(self, parser):
        parser.add_argument('--facts', help='Fact file (default: QA_FACTS_PATH)')
        parser.add_argument('--lexicon', help='Lexicon file (default: QA_LEXICON_PATH)')

    def configure(self, options):
        form = AskForm(data={
            'facts': options.get('facts') or '',
            'lexicon': options.get('lexicon') or '',
            'batch': options.get('batch') or '',
            'output_mode': OutputMode.MACHINE if options.get('machine') else '',
            'trace': bool(options.get('trace')),
        })
        if not form.is_valid():
            returncode = BATCH_ERROR if form.batch_failed else LOAD_ERROR
            raise CommandError(form.error_text(), returncode=returncode)
        return form.config()

    def load(self, config):
        try:
            lexicon = load_lexicon(config.lexicon_path)
            fb = load_facts(config.facts_path, lexicon)
        except QAError as error:
            logger.error('load failed', extra={'error': str(error)})
            raise CommandError(str(error), returncode=LOAD_ERROR) from None
        except (OSError, UnicodeDecodeError) as error:
            raise CommandError(f'cannot read input: {error}', returncode=LOAD_ERROR) from None
        return lexicon, fb
