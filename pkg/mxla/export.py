import logging
from pathlib import Path

import pandas as pd
from openpyxl.styles import Alignment, Border, Font, PatternFill, Side
from openpyxl.utils import get_column_letter

from errors import ExportError
from geometry import classify_region, region_boundaries
from models import ArrayConfig, PatternSweep

logger = logging.getLogger(__name__)

CSV_COLUMNS = ["sweep_variable", "x", "model", "gain_linear", "gain_db"]


def sweeps_to_frame(sweeps: list[PatternSweep]) -> pd.DataFrame:
    """One row per sample, sweeps in the order given, x ascending within each."""
    rows = [
        {
            "sweep_variable": sweep.spec.variable.value,
            "x": sample.x,
            "model": sweep.name,
            "gain_linear": sample.gain_linear,
            "gain_db": sample.gain_db,
        }
        for sweep in sweeps
        for sample in sorted(sweep.samples, key=lambda s: s.x)
    ]
    return pd.DataFrame(rows, columns=CSV_COLUMNS)


def emit_csv(sweeps: list[PatternSweep], path) -> Path:
    path = Path(path)
    df = sweeps_to_frame(sweeps)
    # fixed significant digits keep reruns byte-identical
    df["x"] = df["x"].map(lambda v: f"{v:.9g}")
    for col in ("gain_linear", "gain_db"):
        df[col] = df[col].map(lambda v: f"{v:.12g}")

    try:
        df.to_csv(path, index=False, encoding="utf-8", lineterminator="\n")
    except OSError as e:
        raise ExportError(path, e.strerror or str(e)) from e
    logger.info(f"Wrote {len(df)} rows to {path}")
    return path


def emit_xlsx(sweeps: list[PatternSweep], path, sheet_name: str = "Sweeps") -> Path:
    """Same rows as the CSV, in a formatted workbook."""
    path = Path(path)
    df = sweeps_to_frame(sweeps)

    try:
        with pd.ExcelWriter(path, engine="openpyxl") as writer:
            df.to_excel(writer, index=False, sheet_name=sheet_name)
            ws = writer.sheets[sheet_name]

            center = Alignment(horizontal="center", vertical="center")
            left = Alignment(horizontal="left", vertical="center")
            header_font = Font(bold=True, color="FFFFFF", size=11)
            header_fill = PatternFill(start_color="1B3A5C", end_color="1B3A5C", fill_type="solid")
            alt_fill = PatternFill(start_color="F0F4F8", end_color="F0F4F8", fill_type="solid")
            low_font = Font(color="C0392B")
            thin_border = Border(
                left=Side(style="thin", color="D0D5DD"),
                right=Side(style="thin", color="D0D5DD"),
                top=Side(style="thin", color="D0D5DD"),
                bottom=Side(style="thin", color="D0D5DD"),
            )
            number_formats = {"x": "0.000000", "gain_linear": "0.000000", "gain_db": "0.00"}

            for cell in ws[1]:
                cell.font = header_font
                cell.fill = header_fill
                cell.alignment = center
                cell.border = thin_border

            for row_idx, row in enumerate(ws.iter_rows(min_row=2, max_row=ws.max_row), start=2):
                for col_idx, cell in enumerate(row, start=1):
                    col_name = CSV_COLUMNS[col_idx - 1]
                    cell.border = thin_border
                    cell.alignment = left if col_name in ("sweep_variable", "model") else center
                    if row_idx % 2 == 0:
                        cell.fill = alt_fill
                    if col_name in number_formats and isinstance(cell.value, (int, float)):
                        cell.number_format = number_formats[col_name]
                    # floor of the dB scale
                    if col_name == "gain_db" and isinstance(cell.value, (int, float)) and cell.value <= -100:
                        cell.font = low_font

            for col_idx, column_cells in enumerate(ws.columns, start=1):
                max_length = max(len(str(cell.value or "")) for cell in column_cells)
                ws.column_dimensions[get_column_letter(col_idx)].width = min(max(max_length + 3, 10), 30)

            ws.freeze_panes = "A2"
            ws.auto_filter.ref = ws.dimensions
    except OSError as e:
        raise ExportError(path, e.strerror or str(e)) from e

    logger.info(f"Wrote {len(df)} rows to {path}")
    return path


def report_regions(config: ArrayConfig, r_list: list[float]) -> str:
    """Boundary table plus the regime of every distance in `r_list`."""
    bounds = region_boundaries(config)
    lines = [
        f"Propagation regions for N={config.num_modules}, M={config.antennas_per_module}, "
        f"Γ={config.module_separation_factor:g}, d={config.element_spacing:g} m, λ={config.wavelength:g} m",
        f"  {'amplitude uniform (1.2D)':<32}{bounds.amplitude_uniform_bound:>14.6g} m",
        f"  {'module Rayleigh (2S²/λ)':<32}{bounds.module_rayleigh:>14.6g} m",
        f"  {'common angle (max{5D, 4SD/λ})':<32}{bounds.extended_far_field_bound:>14.6g} m",
        f"  {'array Rayleigh (2D²/λ)':<32}{bounds.array_rayleigh:>14.6g} m",
    ]
    if r_list:
        lines.append("Regimes")
        for r in r_list:
            report = classify_region(config, r)
            lines.append(f"  r = {r:<12g} m  {report.regime.value}")
    return "\n".join(lines) + "\n"
