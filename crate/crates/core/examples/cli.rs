//! Drive the command-line front end in-process.

fn main() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = confmod::cli::run(["confmod", "quad", "--rect", "2,1", "--conjugate"], &mut out, &mut err);
    print!("{}", String::from_utf8_lossy(&out));
    eprint!("{}", String::from_utf8_lossy(&err));
    println!("exit code {code}");
}
