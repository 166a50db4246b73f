"""
Plain-text output of the computing commands

A command's result is a list of ``Section``s. The table format prints each
section as a title, an aligned table and ``key: value`` facts, with a blank
line between sections; the records format prints one ``key=value`` line per
table row and one per section's facts, each starting with ``section=NAME``.
"""

import json
import re
from dataclasses import dataclass, field

from graded.algebra import GradedDims

FORMATS = ('table', 'records')

BARE = re.compile(r"^[\w.+\-/<>*()^:,|]+$")


@dataclass
class Section:
    """One block of output.

    Attributes
    ----------
    name : str
        Record name, e.g. ``page`` or ``verdict``.
    title : str
        First line in the table format.
    headers : tuple of str
        Table columns; empty for a section of facts only.
    rows : list of tuple
    facts : dict
        Ordered ``{key: value}``; list values print one item per line.
    """

    name: str
    title: str = ''
    headers: tuple[str, ...] = ()
    rows: list[tuple] = field(default_factory=list)
    facts: dict = field(default_factory=dict)


def dims_section(name: str, title: str, columns: dict[str, GradedDims]) -> Section:
    """Every collapsed degree with the rank in each of ``columns``."""
    tables = list(columns.values())
    modulus = tables[0].height.modulus
    rows = [(degree, *(table[degree] for table in tables)) for degree in range(modulus)]
    return Section(name, title, ('degree', *columns), rows)


def show_dims(dims: GradedDims | None) -> str:
    if dims is None or dims.is_zero:
        return "0"
    return str(dims)


def _cell(value) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)


def _token(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, (list, tuple, dict)):
        return json.dumps(value, ensure_ascii=False)
    text = str(value)
    return text if BARE.match(text) else json.dumps(text, ensure_ascii=False)


def table_lines(headers, rows) -> list[str]:
    cells = [[_cell(h) for h in headers]] + [[_cell(c) for c in row] for row in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(headers))]
    lines = ["  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip() for row in cells]
    lines.insert(1, "  ".join("-" * width for width in widths))
    return lines


def render_table(sections: list[Section]) -> str:
    blocks = []
    for section in sections:
        lines = [section.title] if section.title else []
        if section.headers:
            lines += table_lines(section.headers, section.rows)
        for key, value in section.facts.items():
            if isinstance(value, (list, tuple)):
                lines.append(f"{key}:")
                lines += [f"  - {_cell(item)}" for item in value]
            else:
                lines.append(f"{key}: {_cell(value)}")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def render_records(sections: list[Section]) -> str:
    lines = []
    for section in sections:
        head = f"section={_token(section.name)}"
        for row in section.rows:
            pairs = " ".join(f"{header}={_token(value)}" for header, value in zip(section.headers, row))
            lines.append(f"{head} {pairs}")
        if section.facts:
            pairs = " ".join(f"{key}={_token(value)}" for key, value in section.facts.items())
            lines.append(f"{head} {pairs}")
    return "\n".join(lines) + "\n"


def render(sections: list[Section], output_format: str = 'table') -> str:
    if output_format == 'records':
        return render_records(sections)
    return render_table(sections)
