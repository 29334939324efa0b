import numpy as np


RASTERS = ('purity', 'cycle_entry', 'cycle_period', 'classes', 'final_states')


def from_scan(scan_result, filepath, mode='w', group='/'):
    """
    Writes the rasters of a scan to an HDF5 file

    :param scan_result: The ScanResult to write.
    :param filepath: The path of the HDF5 file you want to write to.
    :param mode: The write mode of the HDF5 file. This can be 'w' or 'a'
    :param group: A group in the HDF5 file that will contain the rasters.
    """
    import h5py

    # Every raster becomes a dataset of the container group.
    # The grid, slice, system and analysis settings become attributes
    # of the group, prefixed with their origin.

    h5file = h5py.File(filepath, mode)

    if group in h5file:
        container_group = h5file[group]
    else:
        container_group = h5file.create_group(group)

    attributes = (
        ('grid', scan_result.grid.describe()),
        ('slice', scan_result.slice.describe()),
        ('system', scan_result.system.describe()),
        ('options', scan_result.options.describe()),
    )
    for prefix, values in attributes:
        for name, value in values.items():
            container_group.attrs[prefix + '_' + name] = _hdf_attr_value(value)

    for name in RASTERS:
        container_group.create_dataset(name, data=getattr(scan_result, name))

    return h5file


def _hdf_attr_value(value):
    """ Convert a value into a format suitable for an HDF attribute
    """
    if isinstance(value, str):
        return np.bytes_(value.encode('utf-8'))
    return value
