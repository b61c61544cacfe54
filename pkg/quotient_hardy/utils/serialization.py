"""
Deterministic JSON and CSV rendering of reports
"""
import csv
import io
import json

import numpy as np

REPORT_COLUMNS = ['name', 'verdict', 'max_deviation', 'exact_region_size']


def _default(value):
    if isinstance(value, complex):
        return [value.real + 0.0, value.imag + 0.0]
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if hasattr(value, 'to_dict'):
        return value.to_dict()
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


def dump_json(payload):
    """Same payload gives the same bytes"""
    return json.dumps(payload, sort_keys=True, indent=2, default=_default) + "\n"


def reports_to_csv(reports):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(REPORT_COLUMNS)
    for report in reports:
        writer.writerow(report.to_row())
    return buffer.getvalue()


def load_json_file(path):
    with open(path, encoding='utf-8') as handle:
        return json.load(handle)
