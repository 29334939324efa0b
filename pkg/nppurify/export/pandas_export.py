from collections import OrderedDict


def from_orbit(orbit):
    """
    Converts an orbit to a DataFrame with one row per step, indexed by the step number n.

    :param orbit: OrbitRecord to convert.
    :return: Components a, b, c, d of the states and their observables.
    :rtype: pandas.DataFrame
    """
    import pandas as pd

    columns = OrderedDict()
    for i, name in enumerate(('a', 'b', 'c', 'd')):
        columns[name] = orbit.states[:, i]
    for name in ('population', 'coherence', 'coherence_raw', 'purity', 'concurrence_sq'):
        columns[name] = getattr(orbit, name)
    index = pd.RangeIndex(len(orbit), name='n')
    return pd.DataFrame(columns, index=index)


def from_profile(profile):
    """
    Converts a dimension profile to a DataFrame with one row per slice.

    :param profile: List of (concurrence_sq, BoxDimEstimate) as returned by dim_profile.
    :rtype: pandas.DataFrame
    """
    import pandas as pd

    columns = OrderedDict()
    columns['concurrence_sq'] = [value for value, _ in profile]
    columns['dimension'] = [estimate.dimension for _, estimate in profile]
    columns['r2'] = [estimate.r2 for _, estimate in profile]
    columns['num_points'] = [estimate.num_points for _, estimate in profile]
    columns['degenerate'] = [estimate.degenerate for _, estimate in profile]
    return pd.DataFrame(columns)
