"""Human readable renderings of a `MetricsReport`."""
import math

from tabulate import tabulate

SUMMARY_FIELDS = ('er20', 'f20', 'le_cd', 'lr_cd', 'seld')


def _number(value, template):
    if math.isinf(value):
        return 'inf'
    return template % value


def format_summary(report):
    """One line, e.g. ``ER 0.00, F 100.0%, LE 0.0°, LR 100.0%, SELD 0.000``"""
    return "ER %s, F %s%%, LE %s°, LR %s%%, SELD %s" % (
        _number(report.er20, '%.2f'),
        _number(100.0 * report.f20, '%.1f'),
        _number(report.le_cd, '%.1f'),
        _number(100.0 * report.lr_cd, '%.1f'),
        _number(report.seld, '%.3f'))


def format_table(report):
    """Summary metrics followed by the raw counts they were built from."""
    rows = [
        ['ER20', _number(report.er20, '%.2f')],
        ['F20', _number(100.0 * report.f20, '%.1f%%')],
        ['LE_CD', _number(report.le_cd, '%.1f°')],
        ['LR_CD', _number(100.0 * report.lr_cd, '%.1f%%')],
        ['SELD', _number(report.seld, '%.3f')],
    ]
    counts = [[key, value] for key, value in report.as_dict().items()
              if key not in SUMMARY_FIELDS]
    return tabulate(rows + counts, headers=['metric', 'value'])


def report_lines(report):
    """``key=value`` lines in field order, floats in repr precision."""
    lines = []
    for key, value in report.as_dict().items():
        if isinstance(value, bool):
            value = str(value).lower()
        elif isinstance(value, float):
            value = repr(value)
        lines.append('%s=%s' % (key, value))
    return lines


def write_report(path, report):
    with open(path, 'w', newline='') as f:
        f.write('\n'.join(report_lines(report)) + '\n')
