"""Colour edge detection with vector order statistics."""

from ._vosedge import (  # noqa: F401
    MAX_DISTANCE,
    SCHEME_IDS,
    ImageIoError,
    InvalidArgument,
    __version__,
    best_direction,
    connected_components,
    default_schemes,
    detect_edges,
    directional_response,
    disk_image,
    distance,
    endpoint_count,
    load_image,
    pratt_fom,
    reduced_order,
    response_map,
    salt_and_pepper,
    save_edge_map,
    save_image,
    scheme_mask,
    step_image,
    vos_operator,
)
