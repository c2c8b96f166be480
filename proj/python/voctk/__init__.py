"""Python bindings for the voctk vocoder analysis toolkit."""

from ._core import (  # noqa: F401
    __version__,
    IoError,
    ValidationError,
    adv_loss_d,
    adv_loss_g,
    antialiased_activation,
    extract_envelope,
    frechet_distance,
    generator_forward_random,
    leaky_relu,
    length_consistency,
    mcd,
    mel_loss,
    mel_spectrogram,
    metric_report,
    normalize_peak,
    paramcount,
    pcc_mel,
    read_wav,
    ssim_mel,
    snake,
    snake_derivative,
    snakebeta,
    stft_magnitude,
    write_wav,
)
