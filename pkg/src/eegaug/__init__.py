"""Amplitude-perturbation augmentation and a shallow convolutional classifier
for multichannel time series, with an experiment CLI.

Subpackages / modules
---------------------
stft      windowed Fourier analysis and exact overlap-add resynthesis
augment   Gaussian amplitude perturbation with phase preservation
data      trial datasets, ETD1 binary persistence, standardization, splits,
          synthetic generation
kernels   convolution kernels (compiled extension with numpy fallback)
net       the shallow convolutional classifier and its training loop
metrics   confusion matrices, precision/recall/F1, ROC and AUC
cli       the ``eegaug`` command line front end
"""

__version__ = "0.1.0"
