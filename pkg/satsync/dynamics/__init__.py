from .agent import AgentState, agent_step, apply_a, apply_b, saturate, saturation_gap, system_matrices
from .exchange import diffusive_coupling, laplacian_coupling, network_zeta, network_zeta_hat, split_exchange
from .protocol import (
    CHI_FEEDS,
    GainParams,
    Protocol1State,
    Protocol2State,
    control_input,
    protocol1_step,
    protocol2_step,
)
