#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Clifford+T Bilinear Interpolation - Dashboard

T-count comparison, circuit resources and an oracle-versus-circuit preview
for the interpolation settings chosen in the sidebar.
"""

from typing import Any, Dict, Tuple

import pandas as pd
import streamlit as st

from analysis.reports import circuit_report, comparison_frame, comparison_rows
from analysis.resources import block_rows
from circuits.core import MagicMode
from config.defaults import load_settings
from config.parameter_schema import ParameterTier, get_by_group, get_by_tier
from config.presets import list_presets, load_preset, preset_description
from imaging.neqr import SYNTHETIC_KINDS, synthetic_image
from interpolation.bilerp import build_interpolation, make_spec
from interpolation.driver import Backend, run_interpolation
from utils.errors import QBilerpError
from utils.logging_setup import configure_logging
from validation.rules import run_circuit_checks

# Page configuration
st.set_page_config(
    page_title="Clifford+T Bilinear Interpolation",
    layout="wide",
    initial_sidebar_state="expanded"
)

COMPARISON_N = list(range(1, 9))


GROUP_TITLES = {
    "interpolation": "Interpolation details",
    "circuit": "Circuit",
    "simulation": "Simulation",
    "execution": "Execution",
    "logging": "Logging",
}


@st.cache_resource(show_spinner=False)
def _circuit(mode: str, m: int, n: int, q: int, magic_mode: str):
    spec = make_spec(mode, m, n, q)
    return build_interpolation(spec, MagicMode(magic_mode))


def _sidebar() -> Tuple[Dict[str, Any], Dict[str, Any], str]:
    values = {}
    preset: Dict[str, Any] = {}
    with st.sidebar:
        st.markdown("### Interpolation")
        for name, param in get_by_tier(ParameterTier.ESSENTIAL).items():
            values[name] = param.to_streamlit_widget()
        for group, title in GROUP_TITLES.items():
            params = {name: p for name, p in get_by_group(group).items() if p.tier is not ParameterTier.ESSENTIAL}
            if not params:
                continue
            with st.expander(title):
                for name, param in params.items():
                    if param.visible_when is None or param.visible_when(values):
                        values[name] = param.to_streamlit_widget()
        st.markdown("---")
        choice = st.selectbox("Preset", ["(none)", *list_presets()], key="preset")
        if choice != "(none)":
            st.caption(preset_description(choice))
            st.caption("Preset values replace the sidebar settings.")
            preset = load_preset(choice)
        image_kind = st.selectbox("Preview image", SYNTHETIC_KINDS, key="preview_kind")
    return values, preset, image_kind


def main():
    """Main application entry point"""

    st.title("Clifford+T Bilinear Interpolation")
    values, preset, image_kind = _sidebar()
    try:
        settings = load_settings({**values, **preset})
    except QBilerpError as exc:
        st.error(str(exc))
        st.stop()
    configure_logging(settings["LOG_LEVEL"])

    st.markdown("### T-count: proposed versus prior design")
    frame = comparison_frame(comparison_rows(COMPARISON_N))
    st.dataframe(frame, hide_index=True)
    st.line_chart(frame.set_index("n")[["proposed", "prior"]])

    spec = make_spec(settings["MODE"], settings["M"], settings["N"], settings["Q"])
    circuit, _ = _circuit(spec.mode.value, spec.m, spec.n, spec.q, settings["MAGIC_MODE"])
    report = circuit_report("dashboard", circuit, spec.n, spec.model_dump(mode="json"))

    st.markdown("### Generated circuit")
    left, right = st.columns(2)
    with left:
        st.markdown("**Block census**")
        st.dataframe(pd.DataFrame([report.census.model_dump()]), hide_index=True)
        st.markdown("**Blocks**")
        st.dataframe(pd.DataFrame(block_rows(circuit)), hide_index=True)
    with right:
        st.markdown("**Measured resources**")
        st.dataframe(pd.Series(report.resources.model_dump(), name="count"))
        st.metric(
            "T-type count",
            report.resources.t_type_count,
            help=f"formula at operand width {report.formulas.operand_width}: "
                 f"{report.formulas.proposed_at_operand_width}",
        )
        st.markdown("**Checks**")
        checks = run_circuit_checks(circuit, interpolation=True)
        st.dataframe(
            pd.DataFrame([
                {"check": name, "passed": ok,
                 "detail": "; ".join(detail) if isinstance(detail, list) else (detail or "")}
                for name, (ok, detail) in checks.items()
            ]),
            hide_index=True,
        )

    st.markdown("### Preview")
    image = synthetic_image(image_kind, spec.m, spec.q)
    try:
        run = run_interpolation(
            image, spec, Backend(settings["BACKEND"]),
            subpixel=(settings["SUBPIXEL_Y"], settings["SUBPIXEL_X"]),
            batch_size=settings["BATCH_SIZE"],
            magic_mode=MagicMode(settings["MAGIC_MODE"]),
        )
    except QBilerpError as exc:
        st.error(str(exc))
        st.stop()

    columns = st.columns(3)
    columns[0].markdown("**Input**")
    columns[0].dataframe(pd.DataFrame(image.to_array()))
    if run.oracle_image is not None:
        columns[1].markdown("**Oracle**")
        columns[1].dataframe(pd.DataFrame(run.oracle_image.to_array()))
    if run.circuit_image is not None:
        columns[2].markdown("**Circuit**")
        columns[2].dataframe(pd.DataFrame(run.circuit_image.to_array()))
    if run.agreement is True:
        st.success("circuit output matches the oracle bit for bit")
    elif run.agreement is False:
        y, x, expected, got = run.mismatch
        st.error(f"mismatch at pixel ({y}, {x}): oracle {expected}, circuit {got}")


if __name__ == "__main__":
    main()
