from cone_tutte.domain.harmonic.entities import EdgeWeights, LaplaceResidual
from cone_tutte.domain.harmonic.services import (
    harmonic_embed,
    interior_residual_bound,
    laplace_residual,
    weight_scheme,
)

__all__ = [
    "EdgeWeights",
    "LaplaceResidual",
    "harmonic_embed",
    "interior_residual_bound",
    "laplace_residual",
    "weight_scheme",
]
