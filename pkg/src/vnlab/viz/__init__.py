from vnlab.viz.plots import emit_plot, load_results

__all__ = ["emit_plot", "load_results"]
