use std::ffi::{CStr, CString};
use std::ptr;

use hirzebruch_ffi::*;

fn diagram(layers: &[u32]) -> *mut HhDiagram {
    let mut d = ptr::null_mut();
    assert_eq!(
        unsafe { hh_diagram_new(layers.as_ptr(), layers.len(), &mut d) },
        HhStatus::Ok
    );
    d
}

fn layers(d: *const HhDiagram) -> Vec<u32> {
    let mut buf = vec![0u32; 64];
    let mut len = 0;
    assert_eq!(
        unsafe { hh_diagram_layers(d, buf.as_mut_ptr(), buf.len(), &mut len) },
        HhStatus::Ok
    );
    buf.truncate(len);
    buf
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(hh_last_error_message()) }
        .to_string_lossy()
        .into_owned()
}

#[test]
fn reduce_round_trip() {
    unsafe {
        let d = diagram(&[5, 5, 4, 2, 0]);
        assert_eq!(hh_diagram_len(d), 4);
        assert_eq!(hh_diagram_size(d), 16);
        let mut out = ptr::null_mut();
        assert_eq!(hh_reduce(3, d, &mut out), HhStatus::Ok);
        assert_eq!(layers(out), [5, 4, 1]);
        let s = hh_diagram_to_string(out);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), "5,4,1");
        hh_string_free(s);
        hh_diagram_free(out);

        let mut top = ptr::null_mut();
        assert_eq!(hh_top_reduce(3, d, &mut top), HhStatus::Ok);
        assert_eq!(layers(top), [3, 1]);
        hh_diagram_free(top);
        hh_diagram_free(d);
    }
}

#[test]
fn not_reducible_is_a_status() {
    unsafe {
        let d = diagram(&[4, 4, 4, 5, 5, 5, 5, 5]);
        let mut out = ptr::null_mut();
        assert_eq!(hh_sequence_reduce(4, 4, d, &mut out), HhStatus::NotReducible);
        assert!(out.is_null());
        assert_eq!(hh_sequence_reduce(4, 3, d, &mut out), HhStatus::Ok);
        assert_eq!(layers(out), [3, 2, 1, 1]);
        hh_diagram_free(out);
        hh_diagram_free(d);
    }
}

#[test]
fn parse_errors_set_the_message() {
    unsafe {
        let text = CString::new("3,x,1").unwrap();
        let mut d = ptr::null_mut();
        assert_eq!(hh_diagram_parse(text.as_ptr(), &mut d), HhStatus::ParseError);
        assert!(last_error().contains("3,x,1"));
        assert_eq!(hh_reduce(3, ptr::null(), &mut d), HhStatus::NullPointer);
    }
}

#[test]
fn tails_and_generators() {
    unsafe {
        let empty = diagram(&[]);
        let mut set = ptr::null_mut();
        let mut entries = 0;
        assert_eq!(hh_h_tails(3, 4, empty, &mut set, &mut entries), HhStatus::Ok);
        assert_eq!(hh_set_len(set), 3);
        hh_set_free(set);

        let d = diagram(&[5, 5]);
        assert_eq!(hh_tails_enum(2, d, &mut set, &mut entries), HhStatus::Ok);
        assert_eq!((hh_set_len(set), entries), (5, 17));
        let mut first = ptr::null_mut();
        assert_eq!(hh_set_get(set, 0, &mut first), HhStatus::Ok);
        assert_eq!(layers(first), [1]);
        assert_eq!(hh_set_get(set, 5, &mut first), HhStatus::InvalidArgument);
        hh_diagram_free(first);
        hh_set_free(set);
        hh_diagram_free(d);
        hh_diagram_free(empty);

        let name = CString::new("setbignb").unwrap();
        assert_eq!(
            hh_generate(name.as_ptr(), [5, 11, 8].as_ptr(), 3, &mut set),
            HhStatus::Ok
        );
        assert_eq!(hh_set_len(set), 1785);
        hh_set_free(set);
        assert_eq!(
            hh_generate(name.as_ptr(), [5].as_ptr(), 1, &mut set),
            HhStatus::InvalidArgument
        );
    }
}

#[test]
fn speciality_calls() {
    unsafe {
        let prime = 2_147_483_647;
        let d = diagram(&[3, 2, 1]);
        let mut ns = -1;
        assert_eq!(hh_ns(2, 2, d, 16, prime, 7, &mut ns), HhStatus::Ok);
        assert_eq!(ns, 0);
        assert_eq!(hh_ns(2, 1, d, 16, prime, 7, &mut ns), HhStatus::Ok);
        assert_eq!(ns, 1);
        assert_eq!(hh_ns(2, 1, d, 16, 100, 7, &mut ns), HhStatus::InvalidArgument);
        hh_diagram_free(d);

        let name = CString::new("setpba").unwrap();
        let mut set = ptr::null_mut();
        assert_eq!(
            hh_generate(name.as_ptr(), [3, 7, 7].as_ptr(), 3, &mut set),
            HhStatus::Ok
        );
        let mut ok = 0;
        assert_eq!(hh_ch(3, set, 8, 0, prime, 1, &mut ok), HhStatus::Ok);
        assert_eq!(ok, 1);
        let mut kept = ptr::null_mut();
        assert_eq!(hh_check(3, set, 16, prime, 1, &mut kept), HhStatus::Ok);
        assert!(hh_set_len(kept) <= hh_set_len(set));
        hh_set_free(kept);
        hh_set_free(set);

        let mut rs = [0u64; 4];
        let mut len = 0;
        assert_eq!(
            hh_finalnba(3, 0, 5, 4, prime, 1, rs.as_mut_ptr(), rs.len(), &mut len),
            HhStatus::Ok
        );
        assert_eq!(&rs[..len], [5]);
    }
}

#[test]
fn cremona_calls() {
    let mut special = 0;
    assert_eq!(
        unsafe { hh_spec_check(6, 8, 2, 8, 15, &mut special) },
        HhStatus::Ok
    );
    assert_eq!(special, 1);
    assert_eq!(hh_edim(6, 8, 2, 8, 15), -1);
}

#[test]
fn set_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = CString::new(dir.path().join("s").to_str().unwrap()).unwrap();
    unsafe {
        let set = hh_set_new();
        for l in [&[3u32, 1][..], &[], &[2]] {
            let d = diagram(l);
            let mut inserted = 0;
            assert_eq!(hh_set_insert(set, d, &mut inserted), HhStatus::Ok);
            assert_eq!(inserted, 1);
            hh_diagram_free(d);
        }
        assert_eq!(hh_set_write(set, path.as_ptr()), HhStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(hh_set_read(path.as_ptr(), &mut back), HhStatus::Ok);
        assert_eq!(hh_set_len(back), 3);
        hh_set_free(back);
        hh_set_free(set);
        let missing = CString::new(dir.path().join("none").to_str().unwrap()).unwrap();
        assert_eq!(hh_set_read(missing.as_ptr(), &mut back), HhStatus::IoError);
    }
}
