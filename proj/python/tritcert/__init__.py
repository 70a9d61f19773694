"""Exact Z_3 Fourier tools, dictatorship tests and gadget reductions."""

from ._core import (
    CapacityError,
    ContractError,
    FunctionTable,
    ParseError,
    ShapeError,
    TritcertError,
    best_middle_function,
    build_4nat_instance,
    compose_thresholds,
    dec,
    decode_spectrum,
    even_mass,
    expected_decoded_value,
    folding_test_probability,
    gadget_gammas,
    is_folded,
    pass_probability_2nlin,
    pass_probability_3col,
    pass_probability_4nat,
    reduce,
    run_suite,
    soundness_3col,
    soundness_4nat,
    transform,
)

__all__ = [name for name in dir() if not name.startswith("_")]
