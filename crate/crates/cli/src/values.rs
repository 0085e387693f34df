//! Parsing of `--values`/`--life` lists and ranges and of `--params`.

/// Parse `a,b,c`, a single number, or an inclusive `start:stop:step` range.
///
/// The range includes `stop` when it lies within `1e-12` steps of a step
/// multiple, so `1:10:0.5` gives the nineteen values 1, 1.5, …, 10. Values
/// are computed as `start + i·step`, not by repeated addition.
pub fn parse_values(spec: &str) -> Result<Vec<f64>, String> {
    let spec = spec.trim();
    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        let [start, stop, step] = parts[..] else {
            return Err(format!("range '{spec}' must have the form start:stop:step"));
        };
        let (start, stop, step) = (number(start)?, number(stop)?, number(step)?);
        if step == 0.0 {
            return Err(format!("range '{spec}' has a zero step"));
        }
        let span = (stop - start) / step;
        if span < -1e-12 {
            return Err(format!("range '{spec}' is empty"));
        }
        let count = (span + 1e-12).floor() as usize + 1;
        if count > 10_000_000 {
            return Err(format!("range '{spec}' has more than 10 million values"));
        }
        return Ok((0..count).map(|i| start + i as f64 * step).collect());
    }
    let values = spec.split(',').map(number).collect::<Result<Vec<_>, _>>()?;
    Ok(values)
}

fn number(s: &str) -> Result<f64, String> {
    let s = s.trim();
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("'{s}' is not a finite number")),
    }
}

/// Parse `name=value,name=value`, keeping the order given.
pub fn parse_params(spec: &str) -> Result<Vec<(String, f64)>, String> {
    spec.split(',')
        .map(|pair| {
            let (name, value) = pair
                .split_once('=')
                .ok_or_else(|| format!("parameter '{}' must be written name=value", pair.trim()))?;
            Ok((name.trim().to_string(), number(value)?))
        })
        .collect()
}
