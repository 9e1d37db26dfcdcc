use std::ffi::CStr;
use std::ptr;

use fmm_ffi::*;

#[rustfmt::skip]
const TABLE_2: [u8; 64] = [
    221, 232, 231, 242, 246, 247, 251, 250,
    220, 227, 231, 236, 242, 241, 250, 251,
    221, 215, 221, 232, 240, 247, 251, 251,
    217, 216, 216, 225, 237, 241, 245, 247,
    216, 221, 217, 222, 231, 235, 242, 247,
    220, 216, 222, 215, 227, 231, 242, 247,
    216, 216, 211, 216, 222, 227, 237, 247,
    217, 216, 211, 216, 217, 222, 237, 235,
];

unsafe fn new_image(w: u32, h: u32, ch: u32, samples: &[u8]) -> *mut FmmImage {
    let mut img = ptr::null_mut();
    assert_eq!(
        fmm_image_new(w, h, ch, samples.as_ptr(), samples.len(), &mut img),
        FmmStatus::Ok
    );
    img
}

unsafe fn buffer_bytes(buf: *const FmmBuffer) -> Vec<u8> {
    std::slice::from_raw_parts(fmm_buffer_data(buf), fmm_buffer_len(buf)).to_vec()
}

unsafe fn last_error() -> String {
    let p = fmm_last_error_message();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

#[test]
fn compress_decompress_through_handles() {
    unsafe {
        let img = new_image(8, 8, 1, &[55; 64]);
        let mut buf = ptr::null_mut();
        assert_eq!(fmm_compress(img, 5, &mut buf), FmmStatus::Ok);
        let bytes = buffer_bytes(buf);
        assert_eq!(bytes.len(), 20);
        assert_eq!(&bytes[..4], b"FMM1");

        let mut info = FmmHeaderInfo::default();
        assert_eq!(
            fmm_read_header(bytes.as_ptr(), bytes.len(), &mut info),
            FmmStatus::Ok
        );
        assert_eq!(
            info,
            FmmHeaderInfo {
                modulus: 5,
                width: 8,
                height: 8,
                channels: 1
            }
        );

        let mut back = ptr::null_mut();
        assert_eq!(
            fmm_decompress(bytes.as_ptr(), bytes.len(), &mut back),
            FmmStatus::Ok
        );
        assert_eq!(fmm_image_width(back), 8);
        assert_eq!(fmm_image_height(back), 8);
        assert_eq!(fmm_image_channels(back), 1);
        let mut len = 0;
        let p = fmm_image_samples(back, &mut len);
        assert_eq!(std::slice::from_raw_parts(p, len), &[55; 64]);

        let mut q = FmmQuality::default();
        assert_eq!(fmm_quality(img, back, &mut q), FmmStatus::Ok);
        assert!(q.lossless);

        fmm_buffer_free(buf);
        fmm_image_free(back);
        fmm_image_free(img);
    }
}

#[test]
fn worked_block_quality() {
    unsafe {
        let img = new_image(8, 8, 1, &TABLE_2);
        let mut buf = ptr::null_mut();
        assert_eq!(fmm_compress(img, 5, &mut buf), FmmStatus::Ok);
        let bytes = buffer_bytes(buf);
        assert_eq!(bytes.len(), 15 + 4 + 34);
        let mut back = ptr::null_mut();
        assert_eq!(
            fmm_decompress(bytes.as_ptr(), bytes.len(), &mut back),
            FmmStatus::Ok
        );
        let mut q = FmmQuality::default();
        assert_eq!(fmm_quality(img, back, &mut q), FmmStatus::Ok);
        assert!(!q.lossless);
        assert!(q.mse <= 4.0 && q.psnr_db > 42.11);
        assert!((q.rmse - q.mse.sqrt()).abs() < 1e-12);

        let mut cr = 0.0;
        assert_eq!(
            fmm_compression_ratio(64, bytes.len() as u64, &mut cr),
            FmmStatus::Ok
        );
        assert!((cr - 64.0 / 53.0).abs() < 1e-12);
        fmm_buffer_free(buf);
        fmm_image_free(back);
        fmm_image_free(img);
    }
}

#[test]
fn netpbm_through_handles() {
    unsafe {
        let mut data = b"P6\n1 1\n255\n".to_vec();
        data.extend_from_slice(&[255, 0, 0]);
        let mut img = ptr::null_mut();
        assert_eq!(
            fmm_image_read_netpbm(data.as_ptr(), data.len(), &mut img),
            FmmStatus::Ok
        );
        assert_eq!(fmm_image_channels(img), 3);
        let mut buf = ptr::null_mut();
        assert_eq!(fmm_image_write_netpbm(img, &mut buf), FmmStatus::Ok);
        assert_eq!(buffer_bytes(buf), data);
        fmm_buffer_free(buf);
        fmm_image_free(img);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut img = ptr::null_mut();
        assert_eq!(
            fmm_image_new(2, 2, 2, [0u8; 8].as_ptr(), 8, &mut img),
            FmmStatus::InvalidGeometry
        );
        assert_eq!(
            fmm_image_new(2, 2, 1, [0u8; 3].as_ptr(), 3, &mut img),
            FmmStatus::InvalidGeometry
        );
        assert_eq!(
            fmm_image_new(2, 2, 1, ptr::null(), 4, &mut img),
            FmmStatus::NullPointer
        );
        assert!(img.is_null());

        let good = new_image(3, 3, 1, &[9; 9]);
        let mut buf = ptr::null_mut();
        assert_eq!(fmm_compress(good, 4, &mut buf), FmmStatus::InvalidModulus);
        assert!(last_error().contains("invalid modulus 4"));
        assert_eq!(
            fmm_compress(ptr::null(), 5, &mut buf),
            FmmStatus::NullPointer
        );
        assert_eq!(
            fmm_compress(good, 5, ptr::null_mut()),
            FmmStatus::NullPointer
        );

        assert_eq!(fmm_compress(good, 5, &mut buf), FmmStatus::Ok);
        let mut bytes = buffer_bytes(buf);
        fmm_buffer_free(buf);

        let mut out = ptr::null_mut();
        assert_eq!(
            fmm_decompress(bytes.as_ptr(), bytes.len() - 1, &mut out),
            FmmStatus::Truncated
        );
        assert_eq!(fmm_decompress(ptr::null(), 0, &mut out), FmmStatus::Format);
        bytes[3] = b'2';
        assert_eq!(
            fmm_decompress(bytes.as_ptr(), bytes.len(), &mut out),
            FmmStatus::Format
        );
        assert!(last_error().contains("magic"));

        let bad = b"P5 4 4 255\n\0\0";
        assert_eq!(
            fmm_image_read_netpbm(bad.as_ptr(), bad.len(), &mut out),
            FmmStatus::Parse
        );
        assert!(last_error().contains("payload"));

        let other = new_image(1, 1, 1, &[0]);
        let mut q = FmmQuality::default();
        assert_eq!(fmm_quality(good, other, &mut q), FmmStatus::Mismatch);

        let mut cr = 0.0;
        assert_eq!(fmm_compression_ratio(0, 1, &mut cr), FmmStatus::Domain);

        fmm_image_free(other);
        fmm_image_free(good);
        fmm_image_free(ptr::null_mut());
        fmm_buffer_free(ptr::null_mut());
    }
}

#[test]
fn small_helpers() {
    unsafe {
        let mut v = 0u8;
        assert_eq!(fmm_quantize_sample(254, 5, &mut v), FmmStatus::Ok);
        assert_eq!(v, 255);
        assert_eq!(fmm_quantize_sample(3, 5, &mut v), FmmStatus::Ok);
        assert_eq!(v, 5);
        assert_eq!(fmm_quantize_sample(3, 6, &mut v), FmmStatus::InvalidModulus);
        assert!(fmm_modulus_is_valid(5));
        assert!(fmm_modulus_is_valid(127));
        assert!(!fmm_modulus_is_valid(129));
        let msg = CStr::from_ptr(fmm_status_message(FmmStatus::Corrupt));
        assert_eq!(msg.to_str().unwrap(), "corrupt stream");
        assert_eq!(fmm_image_width(ptr::null()), 0);
        assert!(fmm_image_samples(ptr::null(), ptr::null_mut()).is_null());
    }
}
