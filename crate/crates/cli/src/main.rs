use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let (code, mut body) = stabfin_cli::run(&args);
    if let Some(text) = body.as_object_mut().and_then(|m| m.remove("text")) {
        eprint!("{}", text.as_str().unwrap_or_default());
    }
    println!("{body}");
    ExitCode::from(code as u8)
}
