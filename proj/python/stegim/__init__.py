"""Image steganography and watermarking toolkit."""

from ._core import (
    Image,
    RecoveryRecord,
    StegimError,
    SvdReport,
    TamperMap,
    hsrdh_embed,
    hsrdh_extract,
    kmwm_embed,
    kmwm_verify,
    lsb_capacity,
    lsb_embed,
    lsb_extract,
    lzw_compress,
    lzw_decompress,
    mse,
    psnr,
    pvd_capacity,
    pvd_embed,
    pvd_extract,
    quality_line,
    roiwm_capacity,
    roiwm_embed,
    roiwm_verify,
    selfhash_check,
    selfhash_tag,
    ssim,
    svdwm_embed,
    svdwm_verify,
)

__version__ = "0.1.0"

__all__ = [
    "Image",
    "RecoveryRecord",
    "StegimError",
    "SvdReport",
    "TamperMap",
    "hsrdh_embed",
    "hsrdh_extract",
    "kmwm_embed",
    "kmwm_verify",
    "lsb_capacity",
    "lsb_embed",
    "lsb_extract",
    "lzw_compress",
    "lzw_decompress",
    "mse",
    "psnr",
    "pvd_capacity",
    "pvd_embed",
    "pvd_extract",
    "quality_line",
    "roiwm_capacity",
    "roiwm_embed",
    "roiwm_verify",
    "selfhash_check",
    "selfhash_tag",
    "ssim",
    "svdwm_embed",
    "svdwm_verify",
]
