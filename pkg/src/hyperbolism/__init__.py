"""Newton hyperbolism of curves, finite-support line shapes and parabolic apodization."""
from . import analytic, geometry, pipeline, spectrum, timedomain
from .analytic import LineSpec, SampledLine, Shape
from .geometry import Kind, PlaneCurve, Point2, Stage, TransitionState
from .spectrum import Spectrum
from .timedomain import NoiseSpec, TimeSignal, WindowParams

__version__ = "0.1.0"
