"""
Core modules: special functions, channel models, closed-form approximations,
numerical optimizer and Monte Carlo oracle.
"""

from .approximations import (
    analytic_ook,
    analytic_ppm,
    capacity_pie_bound,
    opt_order_noiseless,
    opt_order_noisy,
    opt_prior_ook,
    pie_function_Pi,
    pie_ook_noisy,
    pie_ppm_noisy,
)
from .channels import (
    InfoResult,
    LinkBudget,
    PpmOrder,
    PulseProbability,
    click_probs_ook,
    click_probs_ppm,
    mi_ook_noiseless,
    mi_ook_noisy,
    mi_ppm_noiseless,
    mi_ppm_noisy,
)
from .montecarlo import EmpiricalChannel, MiEstimate, SimConfig, bootstrap_mi, empirical_info, estimate_mi, simulate
from .optimizer import OptimizationReport, OptimizerSettings, maximize_ook_prior, maximize_ppm_order
from .special_functions import binary_entropy, lambert_w0, noise_penalty_g, xlog2x

__all__ = [
    'lambert_w0',
    'binary_entropy',
    'xlog2x',
    'noise_penalty_g',
    'LinkBudget',
    'PpmOrder',
    'PulseProbability',
    'InfoResult',
    'click_probs_ppm',
    'click_probs_ook',
    'mi_ppm_noiseless',
    'mi_ppm_noisy',
    'mi_ook_noiseless',
    'mi_ook_noisy',
    'opt_order_noiseless',
    'opt_order_noisy',
    'opt_prior_ook',
    'pie_function_Pi',
    'pie_ook_noisy',
    'pie_ppm_noisy',
    'capacity_pie_bound',
    'analytic_ppm',
    'analytic_ook',
    'OptimizerSettings',
    'OptimizationReport',
    'maximize_ppm_order',
    'maximize_ook_prior',
    'SimConfig',
    'EmpiricalChannel',
    'MiEstimate',
    'simulate',
    'estimate_mi',
    'empirical_info',
    'bootstrap_mi'
]
