from django.core.exceptions import MultipleObjectsReturned, ObjectDoesNotExist


class QAError(Exception):
    """Base class for every error raised by the question-answering engine."""


# ==================
# FILE LOADING
# ==================

class ParseError(QAError):
    """Malformed fact or lexicon file. Carries the location of the problem."""

    def __init__(self, message, line=None, column=None, path=None):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column
        self.path = path

    def __str__(self):
        location = [str(part) for part in (self.path, self.line, self.column) if part is not None]
        if location:
            return f"{':'.join(location)}: {self.message}"
        return self.message

    @classmethod
    def from_lark(cls, error, path=None):
        """Convert a lark UnexpectedInput into a located ParseError."""
        token = getattr(error, 'token', None)
        char = getattr(error, 'char', None)
        if token is not None and token.type == '$END':
            found = 'end of file'
        elif token is not None:
            found = repr(str(token))
        elif char is not None:
            found = repr(char)
        else:
            found = 'end of file'
        expected = sorted(getattr(error, 'expected', None) or getattr(error, 'allowed', None) or ())
        message = f"unexpected {found}"
        if expected:
            message += f" (expected {', '.join(expected)})"
        line = error.line if getattr(error, 'line', -1) > 0 else None
        column = error.column if getattr(error, 'column', -1) > 0 else None
        return cls(message, line, column, path)

    @classmethod
    def at(cls, token, message, path=None):
        """ParseError located at a lark token."""
        return cls(message, getattr(token, 'line', None), getattr(token, 'column', None), path)


class DuplicateCode(ParseError):
    """Two records of one type share a code."""


class DanglingReference(ParseError):
    """A reference field names a code with no record behind it."""

    def __init__(self, code, line=None, column=None, path=None, namespace=None):
        self.code = code
        self.namespace = namespace
        where = f" {namespace}" if namespace else ""
        super().__init__(f"reference to undefined{where} code '{code}'", line, column, path)


class RecordNotFound(QAError, ObjectDoesNotExist):
    """No record with the requested code in the requested namespace."""


class AmbiguousCode(QAError, MultipleObjectsReturned):
    def __init__(self, code, namespaces):
        super().__init__(f"code '{code}' is defined as {', '.join(namespaces)}; name the namespace")
        self.code = code
        self.namespaces = tuple(namespaces)


class UnknownVerb(QAError):
    def __init__(self, lemma):
        super().__init__(f"unknown verb '{lemma}'")
        self.lemma = lemma


# ==================
# QUESTIONS
# ==================

class EmptyInput(QAError):
    pass


class QuestionSyntaxError(QAError):
    """The question does not fit the grammar. `position` is 1-based."""

    def __init__(self, position, expected, found=None):
        self.position = position
        self.expected = expected
        self.found = found
        got = f", found '{found}'" if found is not None else ""
        super().__init__(f"syntax error at token {position}: expected {expected}{got}")


class UnknownInterrogative(QAError):
    def __init__(self, phrase):
        super().__init__(f"unknown interrogative '{phrase}'")
        self.phrase = phrase


class UnsupportedConstruction(QAError):
    """Recognized grammar that has no predicate mapping."""


# ==================
# IDENTIFICATION
# ==================

class EmptyQuery(QAError):
    pass


class KindMismatch(QAError):
    pass
