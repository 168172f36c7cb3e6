#![no_main]

use copositive::format::ProblemFile;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(problem) = ProblemFile::from_json(text) else {
        return;
    };
    // accepted files must load and survive a round trip
    if let Ok((g, h)) = problem.functions() {
        let back = ProblemFile::from_json(&ProblemFile::from_functions(&g, &h, problem.x0.clone()).to_json())
            .expect("serialized problem parses");
        assert_eq!(back.functions().expect("round trip loads"), (g, h));
    }
});
