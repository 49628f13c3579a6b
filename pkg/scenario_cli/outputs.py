import csv
import io
import json
import logging
from pathlib import Path
from typing import Dict, List, Sequence

import numpy as np
import pydantic
import scipy
from jinja2 import Environment

from .exceptions import ArtifactIOError
from .models import Manifest, ScenarioResult, VerificationReport

logger = logging.getLogger(__name__)

_environment = Environment(trim_blocks=True, lstrip_blocks=True, keep_trailing_newline=True)

_VERIFY_REPORT = _environment.from_string(
    "verify {{ report.scenario }}: {{ 'PASS' if report.passed else 'FAIL' }}\n"
    "{% for r in report.results %}\n"
    "  [{{ 'ok' if r.passed else 'FAIL' }}] {{ r.name }}: {{ '%.6g' | format(r.measured) }} {{ r.relation }} {{ '%.6g' | format(r.bound) }}\n"
    "{% endfor %}\n"
)

_RUN_SUMMARY = _environment.from_string(
    "run {{ result.scenario }}\n"
    "{% for key, value in result.summary.items() %}\n"
    "  {{ key }} = {{ value }}\n"
    "{% endfor %}\n"
    "{% for path in result.artifacts %}\n"
    "  wrote {{ path }}\n"
    "{% endfor %}\n"
)


def format_value(value) -> str:
    """Shortest round-trip text for floats so reruns are byte-identical"""
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(value)


def _plain(value):
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    return value


def render_csv(columns: Sequence[str], rows: Sequence[Sequence]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    writer.writerows([format_value(v) for v in row] for row in rows)
    return buffer.getvalue()


def render_jsonl(columns: Sequence[str], rows: Sequence[Sequence]) -> str:
    return "".join(
        json.dumps({c: _plain(v) for c, v in zip(columns, row)}, sort_keys=False) + "\n" for row in rows
    )


def render_verification(report: VerificationReport) -> str:
    return _VERIFY_REPORT.render(report=report)


def render_run_summary(result: ScenarioResult) -> str:
    return _RUN_SUMMARY.render(result=result)


def package_versions() -> Dict[str, str]:
    from scenario_cli import __version__

    return {
        "scenario_cli": __version__,
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "pydantic": pydantic.VERSION,
    }


def write_text(path: Path, text: str):
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as e:
        raise ArtifactIOError(f"cannot write {path}: {e}")
    logger.info(f"Wrote {path}")


def write_artifacts(result: ScenarioResult, output_dir: str, fmt: str) -> List[str]:
    """Data file (csv or jsonl) plus the optional text artifact; returns the paths written"""
    directory = Path(output_dir)
    written = []
    if result.rows:
        data_path = directory / f"{result.scenario}.{fmt}"
        text = render_csv(result.columns, result.rows) if fmt == "csv" else render_jsonl(result.columns, result.rows)
        write_text(data_path, text)
        written.append(str(data_path))
    if result.text is not None:
        text_path = directory / f"{result.scenario}.txt"
        write_text(text_path, result.text)
        written.append(str(text_path))
    return written


def write_manifest(manifest: Manifest, output_dir: str) -> str:
    path = Path(output_dir) / f"{manifest.scenario}.{manifest.command}.manifest.json"
    write_text(path, manifest.model_dump_json(indent=2) + "\n")
    return str(path)
