#!/usr/bin/env python
# -*- coding: utf-8 -*-

import copy
import json
import os
import logging
from typing import Dict, Any, Optional
from datetime import datetime

from src.utils.exceptions import ConfigError


class Config:
    """
    配置管理类，负责管理实验与流水线配置

    用户配置文件（JSON）会深度合并到默认配置之上，键支持点分隔访问，
    如 'regularity.epsilon'。
    """
    def __init__(self, config_file: Optional[str] = None):
        """
        初始化配置管理器

        Parameters:
        -----------
        config_file : str, optional
            配置文件路径；不提供时只使用默认配置，不读写任何文件
        """
        self.logger = logging.getLogger(self.__class__.__name__)
        self.config_file = config_file
        self.config: Dict[str, Any] = {}

        self.default_config = {
            # 配置元数据
            "meta": {
                "version": "0.1.0",
                "last_updated": datetime.now().isoformat(),
                "description": "生成树嵌入实验配置文件"
            },

            # 宿主图
            'graph': {
                'gnp_max_attempts': 50,     # 按最小度条件重采样的次数上限
            },

            # 树生成
            'tree': {
                'subdivision_length': 12,   # subdivided 形状中每条边细分后的长度
            },

            # 正则性认证与簇划分
            'regularity': {
                'epsilon': 0.25,
                'delta': 0.15,
                'witness_budget': 2000,
                'cluster_graph_budget': 200,
                'target_cluster_size': 40,
                'alpha_prime_factor': 0.25,  # α′ = α * factor
                'max_growth_factor': 2.0,
                'min_free_per_cluster': 32,  # 情形二每个簇至少分到的空闲顶点数
            },

            # 近似生成嵌入
            'almost_spanning': {
                'retry_factor': 10,          # 回溯预算 = retry_factor * 森林顶点数
            },

            # 嵌入流水线
            'pipeline': {
                'alpha': 0.35,
                'leaf_fraction': 0.05,
                'k': 9,
                'phase_split': [0.25, 0.25, 0.25, 0.25],
                'xi': 0.1,
                'cycle_rounds': 25,
                'cycle_augment_rounds': 3,
                'phase_mode': 'random',
                'destination_rule': 'balanced',
                'enforce_gamma': False,
                'certify_stages': False,
            },

            # 蒙特卡洛实验
            'experiment': {
                'host': 'gnp:0.5',
                'n': [300],
                'delta_max': 3,
                'tree_shape': 'uniform-attachment',
                'c': [0.0, 30.0, 60.0, 120.0, 240.0],
                'trials': 50,
                'seed': 20240601,
                'out': 'output',
                'mode': 'embed',
                'workers': 1,
                'target': 0.9,
                'record_timing': True,
                'excel': False,
            },

            # 应用配置
            'app': {
                'log_level': 'INFO',
                'log_file': 'logs/app.log',
            }
        }

        self.load()

    def load(self) -> bool:
        """
        加载配置

        Returns:
        --------
        bool
            是否从文件加载成功

        Raises:
        -------
        ConfigError
            配置文件存在但不是合法 JSON 对象
        """
        if not self.config_file:
            self.config = copy.deepcopy(self.default_config)
            return False

        if not os.path.exists(self.config_file):
            self.logger.warning(f"配置文件 {self.config_file} 不存在，使用默认配置")
            self.config = copy.deepcopy(self.default_config)
            return False

        try:
            with open(self.config_file, 'r', encoding='utf-8') as f:
                user_config = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"加载配置失败: {str(e)}") from e

        if not isinstance(user_config, dict):
            raise ConfigError(f"配置文件 {self.config_file} 的顶层必须是对象")

        self.config = self._deep_merge(self.default_config, user_config)
        self.logger.info(f"已从 {self.config_file} 加载配置")
        return True

    def _deep_merge(self, default_dict: Dict, user_dict: Dict) -> Dict:
        """
        深度合并两个字典，保留用户字典中的值

        Parameters:
        -----------
        default_dict : Dict
            默认字典
        user_dict : Dict
            用户字典

        Returns:
        --------
        Dict
            合并后的字典
        """
        result = copy.deepcopy(default_dict)

        for key, value in user_dict.items():
            if key in result and isinstance(result[key], dict) and isinstance(value, dict):
                result[key] = self._deep_merge(result[key], value)
            else:
                result[key] = copy.deepcopy(value)

        return result

    def save(self, config_file: Optional[str] = None) -> str:
        """
        保存配置

        Parameters:
        -----------
        config_file : str, optional
            目标路径，默认写回加载时的文件

        Returns:
        --------
        str
            实际写入的路径

        Raises:
        -------
        ConfigError
            没有可用的目标路径或写入失败
        """
        target = config_file or self.config_file
        if not target:
            raise ConfigError("未指定配置文件路径，无法保存")

        if "meta" in self.config:
            self.config["meta"]["last_updated"] = datetime.now().isoformat()

        try:
            config_dir = os.path.dirname(target)
            if config_dir:
                os.makedirs(config_dir, exist_ok=True)
            with open(target, 'w', encoding='utf-8') as f:
                json.dump(self.config, f, ensure_ascii=False, indent=4)
        except OSError as e:
            raise ConfigError(f"保存配置失败: {str(e)}") from e

        self.logger.info(f"已将配置保存到 {target}")
        return target

    def get(self, key: str, default: Any = None) -> Any:
        """
        获取配置项

        Parameters:
        -----------
        key : str
            配置项键，支持点分隔的嵌套键，如 'pipeline.k'
        default : Any, optional
            默认值，如果配置项不存在则返回此值

        Returns:
        --------
        Any
            配置项值
        """
        value = self.config
        for k in key.split('.'):
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default
        return value

    def set(self, key: str, value: Any, save_to_file: bool = False) -> None:
        """
        设置配置项

        Parameters:
        -----------
        key : str
            配置项键，支持点分隔的嵌套键
        value : Any
            配置项值
        save_to_file : bool, optional
            是否立即保存到文件，默认False
        """
        keys = key.split('.')
        config = self.config

        for k in keys[:-1]:
            if not isinstance(config.get(k), dict):
                config[k] = {}
            config = config[k]

        config[keys[-1]] = value
        self.logger.debug(f"已设置配置项 {key} = {value}")

        if save_to_file:
            self.save()

    def get_section(self, section: str) -> Dict[str, Any]:
        """
        获取配置的整个部分

        Parameters:
        -----------
        section : str
            配置部分名称，如 'regularity'

        Returns:
        --------
        Dict[str, Any]
            配置部分的副本，如果不存在则返回空字典
        """
        section_data = self.get(section, {})
        if not isinstance(section_data, dict):
            return {}
        return copy.deepcopy(section_data)

    def reset(self) -> None:
        """重置为默认配置"""
        self.config = copy.deepcopy(self.default_config)
        self.logger.info("已重置为默认配置")

    def __getitem__(self, key: str) -> Any:
        return self.get(key)

    def __setitem__(self, key: str, value: Any) -> None:
        self.set(key, value)

    def __contains__(self, key: str) -> bool:
        return self.get(key) is not None

    def get_all(self) -> Dict[str, Any]:
        """
        获取所有配置

        Returns:
        --------
        Dict[str, Any]
            所有配置的深拷贝
        """
        return copy.deepcopy(self.config)
