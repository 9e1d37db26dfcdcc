//! C ABI for the `fmm` codec.
//!
//! Images and byte buffers cross the boundary as opaque handles that the
//! caller releases with `fmm_image_free` / `fmm_buffer_free`. Every fallible
//! call returns an [`FmmStatus`]; the message for the most recent failure on
//! the calling thread is available from `fmm_last_error_message`.
//!
//! The header `include/fmm.h` is regenerated by the build script.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use fmm::{Channels, Error, Modulus, RasterImage};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FmmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidModulus = 2,
    InvalidGeometry = 3,
    Format = 4,
    Truncated = 5,
    Corrupt = 6,
    Range = 7,
    Parse = 8,
    Mismatch = 9,
    Domain = 10,
    Panic = 11,
}

impl From<&Error> for FmmStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidModulus(_) => FmmStatus::InvalidModulus,
            Error::InvalidGeometry(_) => FmmStatus::InvalidGeometry,
            Error::Format(_) => FmmStatus::Format,
            Error::Truncated { .. } => FmmStatus::Truncated,
            Error::Corrupt(_) => FmmStatus::Corrupt,
            Error::IndexOutOfRange { .. } | Error::NotQuantized { .. } => FmmStatus::Range,
            Error::Netpbm { .. } => FmmStatus::Parse,
            Error::Mismatch(_) => FmmStatus::Mismatch,
            Error::ValueTooWide { .. } | Error::InvalidBitWidth(_) | Error::Domain(_) => {
                FmmStatus::Domain
            }
        }
    }
}

/// Opaque image handle.
pub struct FmmImage(RasterImage);

/// Opaque owned byte buffer.
pub struct FmmBuffer(Vec<u8>);

/// Quality measures of a reconstructed image against its original.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct FmmQuality {
    pub mse: f64,
    pub rmse: f64,
    /// Undefined (zero) when `lossless` is set.
    pub psnr_db: f64,
    pub lossless: bool,
}

/// Fields of a container header.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FmmHeaderInfo {
    pub modulus: u32,
    pub width: u32,
    pub height: u32,
    pub channels: u32,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn fail(status: FmmStatus, msg: impl Into<String>) -> FmmStatus {
    set_last_error(msg.into());
    status
}

fn from_error(e: Error) -> FmmStatus {
    fail(FmmStatus::from(&e), e.to_string())
}

/// Runs `f`, converting panics into `FmmStatus::Panic`.
fn guard(f: impl FnOnce() -> Result<(), FmmStatus>) -> FmmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FmmStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(FmmStatus::Panic, "internal panic"),
    }
}

unsafe fn input_bytes<'a>(data: *const u8, len: usize) -> Result<&'a [u8], FmmStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(fail(FmmStatus::NullPointer, "data is null"));
    }
    Ok(slice::from_raw_parts(data, len))
}

unsafe fn image_ref<'a>(img: *const FmmImage) -> Result<&'a RasterImage, FmmStatus> {
    img.as_ref()
        .map(|i| &i.0)
        .ok_or_else(|| fail(FmmStatus::NullPointer, "image handle is null"))
}

fn check_out<T>(out: *mut T) -> Result<(), FmmStatus> {
    if out.is_null() {
        Err(fail(FmmStatus::NullPointer, "output pointer is null"))
    } else {
        Ok(())
    }
}

fn boxed_image(img: RasterImage) -> *mut FmmImage {
    Box::into_raw(Box::new(FmmImage(img)))
}

fn boxed_buffer(data: Vec<u8>) -> *mut FmmBuffer {
    Box::into_raw(Box::new(FmmBuffer(data)))
}

/// Static description of a status code. Never null.
#[no_mangle]
pub extern "C" fn fmm_status_message(status: FmmStatus) -> *const c_char {
    let s: &'static std::ffi::CStr = match status {
        FmmStatus::Ok => c"ok",
        FmmStatus::NullPointer => c"null pointer argument",
        FmmStatus::InvalidModulus => c"invalid modulus",
        FmmStatus::InvalidGeometry => c"invalid image geometry",
        FmmStatus::Format => c"format error",
        FmmStatus::Truncated => c"truncated stream",
        FmmStatus::Corrupt => c"corrupt stream",
        FmmStatus::Range => c"value out of range",
        FmmStatus::Parse => c"netpbm parse error",
        FmmStatus::Mismatch => c"dimension mismatch",
        FmmStatus::Domain => c"domain error",
        FmmStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}

/// Message for the last failure on this thread, or null. Valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn fmm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

#[no_mangle]
pub extern "C" fn fmm_modulus_is_valid(modulus: u32) -> bool {
    Modulus::new(modulus).is_ok()
}

/// # Safety
/// `out` must be null or point to writable memory for one byte.
#[no_mangle]
pub unsafe extern "C" fn fmm_quantize_sample(value: u8, modulus: u32, out: *mut u8) -> FmmStatus {
    guard(|| {
        check_out(out)?;
        let k = Modulus::new(modulus).map_err(from_error)?;
        *out = fmm::quantize_sample(value, k);
        Ok(())
    })
}

/// Copies `len` interleaved samples into a new image.
///
/// # Safety
/// `samples` must be valid for `len` bytes; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fmm_image_new(
    width: u32,
    height: u32,
    channels: u32,
    samples: *const u8,
    len: usize,
    out: *mut *mut FmmImage,
) -> FmmStatus {
    guard(|| {
        check_out(out)?;
        let data = input_bytes(samples, len)?;
        let ch = Channels::from_count(channels).map_err(from_error)?;
        let img = RasterImage::new(width, height, ch, data.to_vec()).map_err(from_error)?;
        *out = boxed_image(img);
        Ok(())
    })
}

/// # Safety
/// `img` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fmm_image_free(img: *mut FmmImage) {
    if !img.is_null() {
        drop(Box::from_raw(img));
    }
}

/// # Safety
/// `img` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fmm_image_width(img: *const FmmImage) -> u32 {
    img.as_ref().map_or(0, |i| i.0.width())
}

/// # Safety
/// `img` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fmm_image_height(img: *const FmmImage) -> u32 {
    img.as_ref().map_or(0, |i| i.0.height())
}

/// # Safety
/// `img` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fmm_image_channels(img: *const FmmImage) -> u32 {
    img.as_ref().map_or(0, |i| i.0.channels().count() as u32)
}

/// Borrowed view of the interleaved samples, valid while `img` lives.
///
/// # Safety
/// `img` must be null or a live handle; `len` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn fmm_image_samples(img: *const FmmImage, len: *mut usize) -> *const u8 {
    let Some(img) = img.as_ref() else {
        return ptr::null();
    };
    if !len.is_null() {
        *len = img.0.samples().len();
    }
    img.0.samples().as_ptr()
}

/// # Safety
/// `data` must be valid for `len` bytes; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fmm_image_read_netpbm(
    data: *const u8,
    len: usize,
    out: *mut *mut FmmImage,
) -> FmmStatus {
    guard(|| {
        check_out(out)?;
        let img = fmm::read_netpbm(input_bytes(data, len)?).map_err(from_error)?;
        *out = boxed_image(img);
        Ok(())
    })
}

/// # Safety
/// `img` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fmm_image_write_netpbm(
    img: *const FmmImage,
    out: *mut *mut FmmBuffer,
) -> FmmStatus {
    guard(|| {
        check_out(out)?;
        *out = boxed_buffer(fmm::write_netpbm(image_ref(img)?));
        Ok(())
    })
}

/// Compresses `img` into a `.fmm` container.
///
/// # Safety
/// `img` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fmm_compress(
    img: *const FmmImage,
    modulus: u32,
    out: *mut *mut FmmBuffer,
) -> FmmStatus {
    guard(|| {
        check_out(out)?;
        let img = image_ref(img)?;
        let k = Modulus::new(modulus).map_err(from_error)?;
        *out = boxed_buffer(fmm::compress(img, k).map_err(from_error)?);
        Ok(())
    })
}

/// Decodes a `.fmm` container.
///
/// # Safety
/// `data` must be valid for `len` bytes; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fmm_decompress(
    data: *const u8,
    len: usize,
    out: *mut *mut FmmImage,
) -> FmmStatus {
    guard(|| {
        check_out(out)?;
        let img = fmm::decompress(input_bytes(data, len)?).map_err(from_error)?;
        *out = boxed_image(img);
        Ok(())
    })
}

/// Reads only the 15-byte header of a container.
///
/// # Safety
/// `data` must be valid for `len` bytes; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fmm_read_header(
    data: *const u8,
    len: usize,
    out: *mut FmmHeaderInfo,
) -> FmmStatus {
    guard(|| {
        check_out(out)?;
        let h = fmm::FmmHeader::parse(input_bytes(data, len)?).map_err(from_error)?;
        *out = FmmHeaderInfo {
            modulus: h.modulus.get() as u32,
            width: h.width,
            height: h.height,
            channels: h.channels.count() as u32,
        };
        Ok(())
    })
}

/// # Safety
/// Both handles must be live; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fmm_quality(
    original: *const FmmImage,
    reconstructed: *const FmmImage,
    out: *mut FmmQuality,
) -> FmmStatus {
    guard(|| {
        check_out(out)?;
        let (a, b) = (image_ref(original)?, image_ref(reconstructed)?);
        let mse = fmm::mse(a, b).map_err(from_error)?;
        let psnr = fmm::psnr(a, b).map_err(from_error)?;
        *out = FmmQuality {
            mse,
            rmse: mse.sqrt(),
            psnr_db: psnr.decibels().unwrap_or(0.0),
            lossless: psnr.is_lossless(),
        };
        Ok(())
    })
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fmm_compression_ratio(
    original_bytes: u64,
    compressed_bytes: u64,
    out: *mut f64,
) -> FmmStatus {
    guard(|| {
        check_out(out)?;
        *out = fmm::compression_ratio(original_bytes, compressed_bytes).map_err(from_error)?;
        Ok(())
    })
}

/// # Safety
/// `buf` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fmm_buffer_data(buf: *const FmmBuffer) -> *const u8 {
    buf.as_ref().map_or(ptr::null(), |b| b.0.as_ptr())
}

/// # Safety
/// `buf` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fmm_buffer_len(buf: *const FmmBuffer) -> usize {
    buf.as_ref().map_or(0, |b| b.0.len())
}

/// # Safety
/// `buf` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fmm_buffer_free(buf: *mut FmmBuffer) {
    if !buf.is_null() {
        drop(Box::from_raw(buf));
    }
}
