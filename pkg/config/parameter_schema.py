#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
parameter_schema.py - Single source of truth for run parameters

Every knob the CLI, the presets and the dashboard expose is declared once
here. Cross-parameter rules (n <= m for scale-down, subpixel offsets below
2^n) live in validation/rules.py.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Tuple


class ParameterTier(Enum):
    """
    Parameter importance tiers for progressive disclosure UI.

    ESSENTIAL: the interpolation spec and backend, always visible
    IMPORTANT: circuit and simulation modes, collapsed section
    ADVANCED: tolerances, caps and batch sizes, hidden by default
    """
    ESSENTIAL = "essential"
    IMPORTANT = "important"
    ADVANCED = "advanced"


class ParameterType(Enum):
    """Value kinds; each maps to one dashboard widget."""
    FLOAT = "float"
    INT = "int"
    SELECT = "select"


@dataclass
class Parameter:
    """
    One run parameter.

    Attributes:
        name: Settings key, e.g. "N" or "BACKEND"
        type: Value kind
        default: Value used when no layer overrides it
        label: Short human-readable name, also used in error messages
        help: One-line tooltip
        detail: Longer note shown under the dashboard widget
        tier: Dashboard section (essential, important, advanced)
        group: "interpolation", "circuit", "simulation", "execution" or "logging"
        min, max: Inclusive numeric bounds
        step: Slider step
        options: Allowed values of a SELECT parameter
        visible_when: Predicate over the current values; None means always shown
    """

    name: str
    type: ParameterType
    default: Any

    label: str = ""
    help: str = ""
    detail: str = ""
    tier: ParameterTier = ParameterTier.ADVANCED
    group: str = ""

    min: Optional[float] = None
    max: Optional[float] = None
    step: Optional[float] = None
    options: List[str] = field(default_factory=list)

    visible_when: Optional[Callable[[Dict[str, Any]], bool]] = None

    def coerce(self, value: Any) -> Any:
        """
        Convert a raw value (environment string, YAML scalar, widget output).

        Raises:
            ValueError: the value cannot be converted
        """
        if self.type is ParameterType.INT:
            # bool is an int subclass, 2.5 would truncate silently
            if isinstance(value, bool) or (isinstance(value, float) and not value.is_integer()):
                raise ValueError(f"{self.label} must be an integer")
            return int(value)
        if self.type is ParameterType.FLOAT:
            return float(value)
        return value if value is None else str(value)

    def _out_of_range(self, value: float) -> Optional[str]:
        if self.min is not None and value < self.min:
            return f"{self.label} must be >= {self.min:g}"
        if self.max is not None and value > self.max:
            return f"{self.label} must be <= {self.max:g}"
        return None

    def validate(self, value: Any) -> Tuple[bool, Optional[str]]:
        """(True, None) or (False, message)."""
        if self.type is ParameterType.SELECT:
            if value not in self.options:
                return False, f"{self.label} must be one of: {', '.join(self.options)}"
            return True, None
        try:
            value = self.coerce(value)
        except (ValueError, TypeError):
            kind = "an integer" if self.type is ParameterType.INT else "a number"
            return False, f"{self.label} must be {kind}"
        message = self._out_of_range(value)
        return message is None, message

    def to_streamlit_widget(self, current_value: Any = None, key: Optional[str] = None):
        """Render this parameter in the dashboard and return the chosen value."""
        import streamlit as st

        value = self.default if current_value is None else current_value
        key = key or f"param_{self.name}"
        help_text = self.help
        if self.detail:
            help_text = f"{help_text}\n\n{self.detail}"

        if self.type is ParameterType.SELECT:
            index = self.options.index(value) if value in self.options else 0
            return st.selectbox(self.label, options=self.options, index=index, help=help_text, key=key)
        if self.type is ParameterType.INT:
            return st.slider(
                self.label,
                min_value=int(self.min),
                max_value=int(self.max),
                value=int(value),
                step=int(self.step or 1),
                help=help_text,
                key=key,
            )
        # tolerances span many decades, so no slider
        return st.number_input(
            self.label,
            min_value=self.min,
            max_value=self.max,
            value=float(value),
            format="%.1e",
            help=help_text,
            key=key,
        )


# =============================================================================
# PARAMETER DEFINITIONS
# =============================================================================

PARAMETERS: Dict[str, Parameter] = {
    "MODE": Parameter(
        name="MODE",
        type=ParameterType.SELECT,
        default="down",
        options=["down", "up"],
        tier=ParameterTier.ESSENTIAL,
        group="interpolation",
        label="Scaling Direction",
        help="Shrink the image by 2^n (down) or enlarge it by 2^n (up).",
        detail="Both directions use the same five-step arithmetic and the same block census; they differ only in where the weight bits come from.",
    ),

    "M": Parameter(
        name="M",
        type=ParameterType.INT,
        default=2,
        min=1,
        max=16,
        step=1,
        tier=ParameterTier.ESSENTIAL,
        group="interpolation",
        label="Position Bits (m)",
        help="Input image side is 2^m pixels.",
        detail="Circuit simulation stays practical up to about m=6.",
    ),

    "N": Parameter(
        name="N",
        type=ParameterType.INT,
        default=1,
        min=1,
        max=8,
        step=1,
        tier=ParameterTier.ESSENTIAL,
        group="interpolation",
        label="Scale Exponent (n)",
        help="Scale factor is 2^n. Scale-down needs n <= m.",
        detail="The T-count grows as 64n^2 - 12n - 8; n=2 gives 224 against 3830 for the prior design.",
    ),

    "Q": Parameter(
        name="Q",
        type=ParameterType.INT,
        default=4,
        min=1,
        max=16,
        step=1,
        tier=ParameterTier.ESSENTIAL,
        group="interpolation",
        label="Colour Bits (q)",
        help="Grey levels per pixel are 2^q.",
        detail="8 for ordinary greyscale, 4 for quick simulations.",
    ),

    "BACKEND": Parameter(
        name="BACKEND",
        type=ParameterType.SELECT,
        default="both",
        options=["oracle", "permutation_sim", "both"],
        tier=ParameterTier.ESSENTIAL,
        group="execution",
        label="Backend",
        help="Classical fixed-point oracle, circuit simulation, or both with an agreement check.",
    ),

    "MAGIC_MODE": Parameter(
        name="MAGIC_MODE",
        type=ParameterType.SELECT,
        default="initial_state",
        options=["initial_state", "prepared"],
        tier=ParameterTier.IMPORTANT,
        group="circuit",
        label="Magic State Supply",
        help="AND targets start in |A> (initial_state) or are prepared by H, T gates on |0> (prepared).",
        detail="The T-type total is 4 per AND either way; prepared mode shows the preparation T as a gate and lets ancillas be recycled.",
    ),

    "BRANCH_POLICY": Parameter(
        name="BRANCH_POLICY",
        type=ParameterType.SELECT,
        default="enumerate_all",
        options=["enumerate_all", "sample"],
        tier=ParameterTier.IMPORTANT,
        group="simulation",
        label="Measurement Branches",
        help="Follow every measurement outcome or sample one with a seeded generator.",
    ),

    "SEED": Parameter(
        name="SEED",
        type=ParameterType.INT,
        default=0,
        min=0,
        max=2**31 - 1,
        step=1,
        tier=ParameterTier.ADVANCED,
        group="simulation",
        label="Sampling Seed",
        help="Seed for sampled measurement outcomes and random test inputs.",
        visible_when=lambda config: config.get("BRANCH_POLICY") == "sample",
    ),

    "SUBPIXEL_Y": Parameter(
        name="SUBPIXEL_Y",
        type=ParameterType.INT,
        default=0,
        min=0,
        max=255,
        step=1,
        tier=ParameterTier.ADVANCED,
        group="interpolation",
        label="Sub-pixel Offset (y)",
        help="Scale-down only: row offset inside each 2^n block; it is also the y weight.",
        visible_when=lambda config: config.get("MODE") == "down",
    ),

    "SUBPIXEL_X": Parameter(
        name="SUBPIXEL_X",
        type=ParameterType.INT,
        default=0,
        min=0,
        max=255,
        step=1,
        tier=ParameterTier.ADVANCED,
        group="interpolation",
        label="Sub-pixel Offset (x)",
        help="Scale-down only: column offset inside each 2^n block; it is also the x weight.",
        visible_when=lambda config: config.get("MODE") == "down",
    ),

    "STATEVECTOR_CAP": Parameter(
        name="STATEVECTOR_CAP",
        type=ParameterType.INT,
        default=16,
        min=1,
        max=24,
        step=1,
        tier=ParameterTier.ADVANCED,
        group="simulation",
        label="Statevector Qubit Cap",
        help="Largest expanded circuit the statevector simulator accepts.",
        detail="16 qubits is 1 MiB of complex amplitudes.",
    ),

    "EQUIVALENCE_TOLERANCE": Parameter(
        name="EQUIVALENCE_TOLERANCE",
        type=ParameterType.FLOAT,
        default=1e-10,
        min=0.0,
        max=1e-3,
        tier=ParameterTier.ADVANCED,
        group="simulation",
        label="Equivalence Tolerance",
        help="Largest amplitude deviation accepted after global-phase alignment.",
    ),

    "NORM_TOLERANCE": Parameter(
        name="NORM_TOLERANCE",
        type=ParameterType.FLOAT,
        default=1e-9,
        min=0.0,
        max=1e-3,
        tier=ParameterTier.ADVANCED,
        group="simulation",
        label="Norm Tolerance",
        help="Allowed drift of the state norm from 1 at measurements and at the end.",
    ),

    "BATCH_SIZE": Parameter(
        name="BATCH_SIZE",
        type=ParameterType.INT,
        default=1024,
        min=1,
        max=65536,
        step=64,
        tier=ParameterTier.ADVANCED,
        group="execution",
        label="Pixels per Batch",
        help="Output pixels evaluated per permutation-simulation pass.",
    ),

    "LOG_LEVEL": Parameter(
        name="LOG_LEVEL",
        type=ParameterType.SELECT,
        default="WARNING",
        options=["DEBUG", "INFO", "WARNING", "ERROR"],
        tier=ParameterTier.ADVANCED,
        group="logging",
        label="Log Level",
        help="Verbosity of the stderr log.",
    ),
}


# =============================================================================
# HELPER FUNCTIONS
# =============================================================================

def get_parameter(name: str) -> Parameter:
    """
    Look up one parameter.

    Raises:
        KeyError: unknown name

    Example:
        >>> get_parameter("STATEVECTOR_CAP").default
        16
    """
    try:
        return PARAMETERS[name]
    except KeyError:
        raise KeyError(f"unknown parameter {name!r}; known: {', '.join(PARAMETERS)}") from None


def get_defaults() -> Dict[str, Any]:
    return {name: param.default for name, param in PARAMETERS.items()}


def get_by_tier(tier: ParameterTier) -> Dict[str, Parameter]:
    """
    Parameters of one dashboard section, in declaration order.

    Example:
        >>> sorted(get_by_tier(ParameterTier.ESSENTIAL))
        ['BACKEND', 'M', 'MODE', 'N', 'Q']
    """
    return {name: param for name, param in PARAMETERS.items() if param.tier is tier}


def get_by_group(group: str) -> Dict[str, Parameter]:
    return {name: param for name, param in PARAMETERS.items() if param.group == group}


def validate_params(param_dict: Dict[str, Any]) -> Tuple[bool, Dict[str, str]]:
    """
    Check each value against its own bounds or options.

    Unknown names are errors too. Rules spanning several parameters are in
    validation.rules.check_settings.

    Example:
        >>> valid, errors = validate_params({"N": 1, "Q": 17})
        >>> valid, errors["Q"]
        (False, 'Colour Bits (q) must be <= 16')
    """
    errors: Dict[str, str] = {}
    for name, value in param_dict.items():
        param = PARAMETERS.get(name)
        if param is None:
            errors[name] = f"Unknown parameter: {name}"
            continue
        ok, message = param.validate(value)
        if not ok:
            errors[name] = message
    return not errors, errors
