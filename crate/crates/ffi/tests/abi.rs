use std::ffi::{c_char, CStr, CString};
use std::ptr;

use eulerian_kit_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> Option<String> {
    let p = ek_last_error_message();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned())
}

struct Handle(*mut EkComplex);

impl Drop for Handle {
    fn drop(&mut self) {
        unsafe { ek_complex_free(self.0) }
    }
}

fn generate(spec: &str) -> Handle {
    let mut k = ptr::null_mut();
    let status = unsafe { ek_complex_generate(cstr(spec).as_ptr(), &mut k) };
    assert_eq!(status, EkStatus::Ok, "{:?}", last_error());
    assert!(!k.is_null());
    Handle(k)
}

fn f_vector(k: &Handle) -> Vec<u64> {
    let mut len = 0;
    unsafe {
        let status = ek_complex_f_vector(k.0, ptr::null_mut(), 0, &mut len);
        assert!(status == EkStatus::BufferTooSmall || len == 0);
        let mut buf = vec![0u64; len];
        assert_eq!(
            ek_complex_f_vector(k.0, buf.as_mut_ptr(), buf.len(), &mut len),
            EkStatus::Ok
        );
        buf
    }
}

fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { ek_string_free(p) };
    s
}

#[test]
fn invariants_of_generated_complexes() {
    let k = generate("projective_plane6");
    assert_eq!(f_vector(&k), [6, 15, 10]);
    let (mut dim, mut chi, mut n) = (0i64, 0i64, 0usize);
    unsafe {
        assert_eq!(ek_complex_dim(k.0, &mut dim), EkStatus::Ok);
        assert_eq!(ek_complex_euler_characteristic(k.0, &mut chi), EkStatus::Ok);
        assert_eq!(ek_complex_num_vertices(k.0, &mut n), EkStatus::Ok);
    }
    assert_eq!((dim, chi, n), (2, 1, 6));

    let mut h = [0i64; 4];
    let mut len = 0;
    assert_eq!(
        unsafe { ek_complex_h_vector(k.0, h.as_mut_ptr(), h.len(), &mut len) },
        EkStatus::Ok
    );
    assert_eq!((len, h), (4, [1, 3, 6, 0]));
}

#[test]
fn short_buffers_report_the_needed_length() {
    let k = generate("simplex_boundary:4");
    let mut buf = [7u64; 2];
    let mut len = 0;
    let status = unsafe { ek_complex_f_vector(k.0, buf.as_mut_ptr(), buf.len(), &mut len) };
    assert_eq!(status, EkStatus::BufferTooSmall);
    assert_eq!(len, 4);
    assert_eq!(buf, [7, 7]);
    assert!(last_error().unwrap().contains("4 needed"));
    assert_eq!(f_vector(&k), [5, 10, 10, 5]);
    assert_eq!(last_error(), None);
}

#[test]
fn checks_match_the_library() {
    let mut holds = false;
    let mut parity = true;
    unsafe {
        let rp2 = generate("projective_plane6");
        assert_eq!(ek_check_eulerian(rp2.0, &mut holds), EkStatus::Ok);
        assert!(holds);
        assert_eq!(ek_check_dehn_sommerville(rp2.0, &mut holds), EkStatus::Ok);
        assert!(holds);
        assert_eq!(
            ek_check_main_formula(rp2.0, &mut holds, &mut parity),
            EkStatus::Ok
        );
        assert!(holds && !parity);
        assert_eq!(ek_check_flag(rp2.0, &mut holds), EkStatus::Ok);
        assert!(!holds);

        let hexagon = generate("polygon:6");
        assert_eq!(
            ek_check_main_formula(hexagon.0, &mut holds, &mut parity),
            EkStatus::Ok
        );
        assert!(!holds && parity);
        assert_eq!(
            ek_check_main_formula(hexagon.0, &mut holds, ptr::null_mut()),
            EkStatus::Ok
        );
        assert_eq!(ek_check_flag(hexagon.0, &mut holds), EkStatus::Ok);
        assert!(holds);

        let st = generate("suspension(torus7)");
        assert_eq!(ek_check_eulerian(st.0, &mut holds), EkStatus::Ok);
        assert!(!holds);
    }
}

#[test]
fn parsing_text_and_json() {
    let mut k = ptr::null_mut();
    unsafe {
        let text = cstr("# a square\na b\nb c\nc d\nd a\n");
        assert_eq!(ek_complex_from_text(text.as_ptr(), &mut k), EkStatus::Ok);
        let square = Handle(k);
        assert_eq!(f_vector(&square), [4, 4]);
        let mut out = ptr::null_mut();
        assert_eq!(ek_complex_to_text(square.0, &mut out), EkStatus::Ok);
        assert_eq!(take_string(out).lines().count(), 4);

        let json = cstr(r#"{"facets": [["x", "y", "z"]]}"#);
        assert_eq!(ek_complex_from_json(json.as_ptr(), &mut k), EkStatus::Ok);
        let triangle = Handle(k);
        assert_eq!(f_vector(&triangle), [3, 3, 1]);

        k = ptr::dangling_mut();
        let bad = cstr("a b a\n");
        assert_eq!(ek_complex_from_text(bad.as_ptr(), &mut k), EkStatus::ParseError);
        assert!(k.is_null());
        assert!(last_error().unwrap().starts_with("1:5:"), "{:?}", last_error());

        let bad = cstr("{\"facets\": [[\"a\",]]}");
        assert_eq!(ek_complex_from_json(bad.as_ptr(), &mut k), EkStatus::ParseError);
        assert!(last_error().unwrap().starts_with("1:"));

        let empty = cstr("");
        assert_eq!(ek_complex_from_text(empty.as_ptr(), &mut k), EkStatus::Ok);
        let empty = Handle(k);
        let mut dim = 0;
        assert_eq!(ek_complex_dim(empty.0, &mut dim), EkStatus::Ok);
        assert_eq!(dim, -1);
        let mut holds = true;
        assert_eq!(
            ek_check_dehn_sommerville(empty.0, &mut holds),
            EkStatus::InvalidInput
        );
        assert_eq!(ek_check_eulerian(empty.0, &mut holds), EkStatus::Ok);
        assert!(!holds);
    }
}

#[test]
fn report_json_is_the_cli_document() {
    let k = generate("torus7");
    let mut out = ptr::null_mut();
    let checks = cstr("ds, formula proof");
    assert_eq!(
        unsafe { ek_report_json(k.0, checks.as_ptr(), false, &mut out) },
        EkStatus::Ok
    );
    let doc: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(doc["input"]["spec"], "torus7");
    assert_eq!(doc["ds_rows"][0]["lhs"], "-2");
    assert_eq!(doc["ds_rows"][1]["rhs"], "6");
    assert_eq!(doc["main_formula"]["rhs"], "0/1");
    assert_eq!(doc["proof_trace"]["A"], "-8");
    assert!(doc.get("is_eulerian").is_none());

    assert_eq!(
        unsafe { ek_report_json(k.0, ptr::null(), true, &mut out) },
        EkStatus::Ok
    );
    let doc: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(doc["checks"].as_object().unwrap().len(), 4);

    let bogus = cstr("homology");
    assert_eq!(
        unsafe { ek_report_json(k.0, bogus.as_ptr(), false, &mut out) },
        EkStatus::InvalidInput
    );
    assert!(out.is_null());
    assert!(last_error().unwrap().contains("homology"));
}

#[test]
fn argument_errors() {
    let mut k = ptr::null_mut();
    let mut v = 0i64;
    let mut len = 0usize;
    unsafe {
        assert_eq!(ek_complex_generate(ptr::null(), &mut k), EkStatus::NullPointer);
        assert_eq!(
            ek_complex_generate(cstr("torus7").as_ptr(), ptr::null_mut()),
            EkStatus::NullPointer
        );
        assert_eq!(ek_complex_dim(ptr::null(), &mut v), EkStatus::NullPointer);
        assert!(last_error().unwrap().contains("complex"));
        assert_eq!(
            ek_complex_f_vector(ptr::null(), ptr::null_mut(), 0, &mut len),
            EkStatus::NullPointer
        );

        let h = generate("torus7");
        assert_eq!(ek_complex_dim(h.0, ptr::null_mut()), EkStatus::NullPointer);
        assert_eq!(
            ek_complex_f_vector(h.0, ptr::null_mut(), 5, &mut len),
            EkStatus::NullPointer
        );

        let invalid = [0xffu8, 0xfe, 0];
        assert_eq!(
            ek_complex_from_text(invalid.as_ptr().cast(), &mut k),
            EkStatus::InvalidUtf8
        );

        assert_eq!(
            ek_complex_generate(cstr("klein_bottle").as_ptr(), &mut k),
            EkStatus::ParseError
        );
        assert!(last_error().unwrap().contains("unknown generator"));
        assert_eq!(
            ek_complex_generate(cstr("polygon:2").as_ptr(), &mut k),
            EkStatus::InvalidInput
        );
        assert!(k.is_null());

        ek_complex_free(ptr::null_mut());
        ek_string_free(ptr::null_mut());
    }
}

#[test]
fn h_vector_of_a_large_sphere() {
    let k = generate("simplex_boundary:16");
    let mut len = 0;
    let mut buf = vec![0i64; 32];
    assert_eq!(
        unsafe { ek_complex_h_vector(k.0, buf.as_mut_ptr(), buf.len(), &mut len) },
        EkStatus::Ok
    );
    assert_eq!(len, 17);
    assert!(buf[..17].iter().all(|&h| h == 1));
}

#[test]
fn errors_are_per_thread() {
    let bad = cstr("nope");
    let mut k = ptr::null_mut();
    assert_eq!(
        unsafe { ek_complex_generate(bad.as_ptr(), &mut k) },
        EkStatus::ParseError
    );
    let other = std::thread::spawn(last_error).join().unwrap();
    assert_eq!(other, None);
    assert!(last_error().is_some());
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(ek_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
