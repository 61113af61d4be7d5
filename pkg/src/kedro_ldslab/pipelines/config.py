from kedro.config import OmegaConfigLoader

from ..formulations import ALL_FORMULATIONS, Formulation


def resolve_formulations(*selection: str) -> list[str]:
    """
    OmegaConf resolver behind `${formulations:...}`.

    `${formulations:all}` expands to every formulation in report order; a selection such as
    `${formulations:implicit-minmax,original}` is validated and kept in order.
    """
    if not selection or selection == ("all",):
        return [f.value for f in ALL_FORMULATIONS]
    return [f.value for f in Formulation.parse_many(s.strip() for s in selection)]


CUSTOM_RESOLVERS = {"formulations": resolve_formulations}


def load_run_parameters(conf_source: str = "conf") -> dict:
    """
    Load run parameters using OmegaConfigLoader.

    Returns:
        Dictionary containing the parameters from conf/base/parameters*.yml
    """
    config_loader = OmegaConfigLoader(
        conf_source=conf_source,
        base_env="base",
        default_run_env="local",
        custom_resolvers=CUSTOM_RESOLVERS,
    )
    return config_loader["parameters"]


def load_formulations_config(conf_source: str = "conf") -> list[str]:
    """Formulations to build `solve_<formulation>` pipelines for."""
    params = load_run_parameters(conf_source)
    return list(params.get("comparison", {}).get("formulations", resolve_formulations()))
