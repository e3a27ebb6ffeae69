"""General utilities."""

import os
import textwrap
import typing

from jinja2 import (
    Environment, PackageLoader, ChoiceLoader, DictLoader
)


#
# Errors and budgets
# ------------------
#


class BudgetExceededError(RuntimeError):
    """Exhaustive search stopped by a configured cap.

    The arguments are the description of the cap and the value of the cap, so
    that the message reads like the tuple-formed ``ValueError`` raised for
    invalid inputs.
    """

    def __init__(self, what, cap):
        """Initialize the error with the cap description and its value."""
        super().__init__(what, cap)
        self.what = what
        self.cap = cap


class StepCounter(object):
    """Counter of elementary steps against a fixed budget.

    One step is one adjacency-row operation: an AND, XOR or comparison of the
    bit row of a single vertex.  When the budget is ``None``, the counter only
    counts.
    """

    __slots__ = [
        'budget',
        'steps'
    ]

    def __init__(self, budget: typing.Optional[int] = None):
        """Initialize the counter."""
        self.budget = budget
        self.steps = 0

    def charge(self, n_steps=1):
        """Charge the given number of steps.

        :py:class:`BudgetExceededError` is raised when the total goes over the
        budget.
        """
        self.steps += n_steps
        if self.budget is not None and self.steps > self.budget:
            raise BudgetExceededError('step budget', self.budget)


STEP_BUDGET_ENV = 'FLIPPER_STEP_BUDGET'

DEFAULT_STEP_BUDGET_FACTOR = 64


def step_budget_factor_from_env(default=DEFAULT_STEP_BUDGET_FACTOR) -> int:
    """Get the step budget factor, possibly overridden by the environment."""

    raw = os.environ.get(STEP_BUDGET_ENV)
    if raw is None or raw.strip() == '':
        return default

    try:
        factor = int(raw)
    except ValueError:
        raise ValueError(
            'Invalid step budget factor', raw,
            'expecting a positive integer in ' + STEP_BUDGET_ENV
        )
    if factor < 1:
        raise ValueError(
            'Invalid step budget factor', factor,
            'expecting a positive integer in ' + STEP_BUDGET_ENV
        )
    return factor


#
# Bit rows
# --------
#
# Vertex sets are encoded as Python integers with bit v set for vertex v.
#


def mask_of(vertices: typing.Iterable[int]) -> int:
    """Form the bit mask of the given vertices."""
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def iter_bits(mask: int) -> typing.Iterator[int]:
    """Iterate over the set bits of a mask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def set_of_mask(mask: int) -> typing.FrozenSet[int]:
    """Get the vertex set of a bit mask."""
    return frozenset(iter_bits(mask))


#
# Jinja environment creation
# --------------------------
#


class JinjaEnv(Environment):
    """A Jinja environment for rendering text reports.

    The templates are retrieved from the ``templates`` directory in the
    flippergame package.  Two filters are added for game objects,

    - :py:meth:`vertex_list`
    - :py:meth:`flip_list`

    and they are also usable as plain methods.

    Parameters
    ----------

    max_width
        The maximum width of the lines of wrapped vertex lists.

    max_shown
        The number of vertices shown before a list is elided.

    add_filters
        Additional filters to add to the environment.

    add_templ
        Additional templates, keyed by name, mostly for tests.

    """

    def __init__(
            self, max_width=78, max_shown=40, add_filters=None,
            add_templ=None
    ):
        """Initialize the Jinja environment."""

        super().__init__(
            trim_blocks=True, lstrip_blocks=True, keep_trailing_newline=True,
            loader=ChoiceLoader(
                [PackageLoader('flippergame')] +
                ([DictLoader(add_templ)] if add_templ is not None else [])
            )
        )

        self._max_width = max_width
        self._max_shown = max_shown

        self.filters['vertex_list'] = self.vertex_list
        self.filters['flip_list'] = self.flip_list

        if add_filters is not None:
            self.filters.update(add_filters)

    def vertex_list(self, vertices, indent=0) -> str:
        """Render a vertex set as a sorted, wrapped, possibly elided list."""

        ordered = sorted(vertices)
        shown = [str(i) for i in ordered[:self._max_shown]]
        if len(ordered) > self._max_shown:
            shown.append('... ({} more)'.format(
                len(ordered) - self._max_shown
            ))
        text = '{' + ', '.join(shown) + '}'
        prefix = ' ' * indent
        return textwrap.fill(
            text, width=self._max_width, initial_indent=prefix,
            subsequent_indent=prefix + ' '
        )

    def flip_list(self, flips) -> str:
        """Render a flip set, one atomic flip per line."""

        lines = []
        for flip in sorted(flips):
            lines.append('{} x {}'.format(
                self.vertex_list(flip.a), self.vertex_list(flip.b)
            ))
            continue
        if not lines:
            return '(no flips)'
        return '\n'.join(lines)
