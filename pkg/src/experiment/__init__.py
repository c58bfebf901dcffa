#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
蒙特卡洛实验：配置、运行与阈值标定
"""

from src.experiment.experiment_config import ExperimentConfig
from src.experiment.runner import ExperimentRunner, TrialTask, run_trial, run_experiment
from src.experiment.calibration import CalibrationRecord, calibrate

__all__ = [
    'ExperimentConfig', 'ExperimentRunner', 'TrialTask', 'run_trial', 'run_experiment',
    'CalibrationRecord', 'calibrate',
]
