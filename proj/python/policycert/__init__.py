# Copyright 2026 The policycert Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Distribution-free performance bounds for stochastic policies.

Thin wrappers over the C++ core. Reports come back as dicts; environment
configs and plans may be passed as dicts or lists.
"""

import json

from policycert import _core
from policycert._core import (
    PolicyCertError,
    SCHEMA_VERSION,
    binom_cdf,
    binom_cdf_inverse_p,
    binom_pmf,
    dkw_gap,
    inflate_delta,
    one_sided_ks_distance,
    var_min_samples,
    var_order_index,
)

__all__ = [
    "PolicyCertError",
    "SCHEMA_VERSION",
    "binom_cdf",
    "binom_cdf_inverse_p",
    "binom_pmf",
    "builtin_environments",
    "cem_optimize",
    "chance_constraint_test",
    "compute_bound",
    "compute_robust_bound",
    "constraint_test",
    "dkw_gap",
    "failure_prob_bound",
    "field_upper_bound",
    "inflate_delta",
    "one_sided_ks_distance",
    "random_policies",
    "rollouts",
    "run_experiment",
    "sample_values",
    "select_policy",
    "sensitivity",
    "var_min_samples",
    "var_order_index",
]


def _text(obj):
    if obj is None:
        return ""
    return obj if isinstance(obj, str) else json.dumps(obj)


def compute_bound(values, measure="var", tau=0.7, delta=0.2, upper_bound=None):
    return json.loads(_core.compute_bound(list(values), measure, tau, delta, upper_bound))


def failure_prob_bound(failures, n, delta=0.2):
    return json.loads(_core.failure_prob_bound(failures, n, delta))


def compute_robust_bound(values, measure, tau, delta, alpha, upper_bound=None):
    return json.loads(
        _core.compute_robust_bound(list(values), measure, tau, delta, alpha, upper_bound))


def sensitivity(measure, n, tau, delta, alpha, q_sim=None):
    return json.loads(_core.sensitivity(measure, n, tau, delta, alpha, q_sim))


def constraint_test(values, measure, tau, delta, cutoff, upper_bound=None):
    return json.loads(
        _core.constraint_test(list(values), measure, tau, delta, cutoff, upper_bound))


def chance_constraint_test(g, tau, delta, route="failprob"):
    return json.loads(_core.chance_constraint_test(list(g), tau, delta, route))


def select_policy(batches, measure, tau, delta, correction="sidak", upper_bound=None,
                  allow_defaulted=False):
    return json.loads(
        _core.select_policy([list(b) for b in batches], measure, tau, delta, correction,
                            upper_bound, allow_defaulted))


def sample_values(env_config, n, seed=0, plan=None, field="cost", threads=1):
    return _core.sample_values(_text(env_config), _text(plan), n, seed, field, threads)


def field_upper_bound(env_config, field="cost"):
    return _core.field_upper_bound(_text(env_config), field)


def rollouts(env_config, n, seed=0, plan=None, trajectories=False):
    text = _core.rollouts_jsonl(_text(env_config), _text(plan), n, seed, trajectories)
    return [json.loads(line) for line in text.splitlines() if line]


def builtin_environments():
    return json.loads(_core.builtin_environments())


def cem_optimize(env_config, seed=0, **options):
    return json.loads(_core.cem_optimize(_text(env_config), seed=seed, **options))


def random_policies(env_config, count, seed=0):
    return json.loads(_core.random_policies(_text(env_config), count, seed))["plans"]


def run_experiment(name, config, base_dir=""):
    """Runs an experiment and returns {file name: contents}."""
    return dict(_core.run_experiment(name, _text(config), base_dir))
