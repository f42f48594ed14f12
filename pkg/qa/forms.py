from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from django import forms
from django.conf import settings
from django.core.exceptions import ValidationError
from django.db import models


class OutputMode(models.TextChoices):
    PLAIN = 'plain', 'Plain text'
    MACHINE = 'machine', 'Machine-readable answer lines'


@dataclass(frozen=True)
class CliConfig:
    """Validated configuration of one ask/explain run."""
    facts_path: Path
    lexicon_path: Path
    batch_path: Optional[Path] = None
    output_mode: str = OutputMode.PLAIN
    trace: bool = False

    @property
    def is_batch(self):
        return self.batch_path is not None

    @property
    def machine(self):
        return self.output_mode == OutputMode.MACHINE


def _readable_file(value, what):
    """Path of an existing, readable file."""
    path = Path(value).expanduser()
    if not path.exists():
        raise ValidationError(f'{what} {path} does not exist', code='missing')
    if not path.is_file():
        raise ValidationError(f'{what} {path} is not a file', code='not_a_file')
    try:
        with path.open('rb'):
            pass
    except OSError as error:
        raise ValidationError(f'{what} {path} cannot be read: {error.strerror}', code='unreadable')
    return path


class AskForm(forms.Form):
    """Command-line options; omitted options fall back to the QA_* settings."""
    facts = forms.CharField(required=False, help_text='Fact file')
    lexicon = forms.CharField(required=False, help_text='Lexicon file')
    batch = forms.CharField(required=False, help_text='File with one question per line')
    output_mode = forms.ChoiceField(choices=OutputMode.choices, required=False)
    trace = forms.BooleanField(required=False)

    # Options whose failure is a batch-file error rather than a load error
    BATCH_FIELDS = frozenset({'batch'})

    def clean_facts(self):
        value = self.cleaned_data.get('facts') or getattr(settings, 'QA_FACTS_PATH', None)
        if not value:
            raise ValidationError('no fact file given (--facts or QA_FACTS_PATH)', code='required')
        return _readable_file(value, 'fact file')

    def clean_lexicon(self):
        value = self.cleaned_data.get('lexicon') or getattr(settings, 'QA_LEXICON_PATH', None)
        if not value:
            raise ValidationError('no lexicon file given (--lexicon or QA_LEXICON_PATH)',
                                  code='required')
        return _readable_file(value, 'lexicon file')

    def clean_batch(self):
        value = self.cleaned_data.get('batch')
        if not value:
            return None
        return _readable_file(value, 'batch file')

    def clean_output_mode(self):
        return self.cleaned_data.get('output_mode') or getattr(settings, 'QA_OUTPUT_MODE',
                                                               OutputMode.PLAIN)

    def clean_trace(self):
        return bool(self.cleaned_data.get('trace') or getattr(settings, 'QA_TRACE', False))

    def clean(self):
        cleaned_data = super().clean()
        facts, lexicon = cleaned_data.get('facts'), cleaned_data.get('lexicon')
        if facts is not None and facts == lexicon:
            raise ValidationError('the fact file and the lexicon file are the same file')
        return cleaned_data

    @property
    def batch_failed(self):
        return bool(self.errors) and set(self.errors) <= self.BATCH_FIELDS

    def error_text(self):
        return '; '.join(str(message) for messages in self.errors.values() for message in messages)

    def config(self):
        data = self.cleaned_data
        return CliConfig(
            facts_path=data['facts'],
            lexicon_path=data['lexicon'],
            batch_path=data['batch'],
            output_mode=data['output_mode'],
            trace=data['trace'],
        )
