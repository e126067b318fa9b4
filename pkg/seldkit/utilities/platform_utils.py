import json
import os
import subprocess
from collections import OrderedDict

import numpy
import scipy
from tabulate import tabulate

from .. import __version__


def get_version():
    """Return seldkit version tag/current commit and the numpy/scipy versions
    """
    try:
        seldkit = subprocess.check_output(
            ["git", "describe", "--tags", "--always"],
            cwd=os.path.dirname(__file__),
            stderr=subprocess.DEVNULL).decode('utf-8').strip()
    except (subprocess.CalledProcessError, OSError):
        seldkit = __version__
    return seldkit, numpy.__version__, scipy.__version__


def _format_item(item):
    if isinstance(item, (list, tuple)):
        return 'x'.join(str(v) for v in item)
    return str(item)


def get_configuration_string(pipeline_params, model_params, versions):
    """Construct a well-formatted string for {pipeline,model}_params

    Pipeline parameters are dumped as JSON. Model parameters are printed as
    a one-row table keyed by index so the header stays narrow.
    """
    config_str = ("\n\nseldkit Version: %s\nnumpy Version: %s\n"
                  "scipy Version: %s\n" % versions)
    config_str += "\n========== Pipeline Configuration ==========\n"
    config_str += json.dumps(pipeline_params, sort_keys=True,
                             indent=2, separators=(',', ': '))
    config_str += "\n\n========== Model Configuration ==========\n"
    row = OrderedDict()
    for key in sorted(model_params.keys()):
        value = model_params[key]
        if isinstance(value, (list, tuple)):
            value = ','.join(_format_item(v) for v in value)
        row[key] = value

    key_dict = OrderedDict()
    for counter, key in enumerate(row.keys()):
        key_dict[key] = counter
    config_str += "Keys:\n"
    config_str += json.dumps(key_dict, indent=2,
                             separators=(',', ': '))
    config_str += '\n\n'
    config_str += tabulate([list(row.values())],
                           headers=list(key_dict.values()))
    config_str += '\n'
    return config_str
