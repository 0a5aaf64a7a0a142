from .plotting import plot_euler_lattice, plot_fifths_spiral
