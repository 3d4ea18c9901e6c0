//! Tiny arithmetic expressions for flag values, so irrational reference
//! configurations can be given exactly: `pi/4`, `1/sqrt3`, `2sqrt2/3`,
//! `-sqrt(2-sqrt2)/2`, `1/(2sqrt(2-sqrt2))`.
//!
//! Grammar: `+ - * /`, parentheses, `pi`, `sqrt2`, `sqrt3`, `sqrt(...)`,
//! decimal numbers, and implicit multiplication between adjacent factors.

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(f64),
    Pi,
    Sqrt2,
    Sqrt3,
    Sqrt,
    Plus,
    Minus,
    Star,
    Slash,
    Open,
    Close,
}

fn tokenize(input: &str) -> Result<Vec<Token>, String> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        match ch {
            ' ' | '\t' => i += 1,
            '+' => {
                tokens.push(Token::Plus);
                i += 1;
            }
            '-' => {
                tokens.push(Token::Minus);
                i += 1;
            }
            '*' => {
                tokens.push(Token::Star);
                i += 1;
            }
            '/' => {
                tokens.push(Token::Slash);
                i += 1;
            }
            '(' => {
                tokens.push(Token::Open);
                i += 1;
            }
            ')' => {
                tokens.push(Token::Close);
                i += 1;
            }
            '0'..='9' | '.' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let value = text
                    .parse::<f64>()
                    .map_err(|_| format!("bad number `{text}`"))?;
                tokens.push(Token::Number(value));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric()) {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                match word.as_str() {
                    "pi" => tokens.push(Token::Pi),
                    "sqrt2" => tokens.push(Token::Sqrt2),
                    "sqrt3" => tokens.push(Token::Sqrt3),
                    "sqrt" => tokens.push(Token::Sqrt),
                    other => return Err(format!("unknown symbol `{other}`")),
                }
            }
            other => return Err(format!("unexpected character `{other}`")),
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn advance(&mut self) -> Option<Token> {
        let token = self.tokens.get(self.pos).cloned();
        if token.is_some() {
            self.pos += 1;
        }
        token
    }

    fn expect_close(&mut self) -> Result<(), String> {
        match self.advance() {
            Some(Token::Close) => Ok(()),
            _ => Err("missing `)`".to_string()),
        }
    }

    fn expression(&mut self) -> Result<f64, String> {
        let mut value = self.term()?;
        while let Some(op) = self.peek() {
            match op {
                Token::Plus => {
                    self.advance();
                    value += self.term()?;
                }
                Token::Minus => {
                    self.advance();
                    value -= self.term()?;
                }
                _ => break,
            }
        }
        Ok(value)
    }

    fn term(&mut self) -> Result<f64, String> {
        let mut value = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.advance();
                    value *= self.unary()?;
                }
                Some(Token::Slash) => {
                    self.advance();
                    value /= self.unary()?;
                }
                // Implicit multiplication: `2sqrt2`, `2pi`, `2(1+1)`.
                Some(Token::Number(_))
                | Some(Token::Pi)
                | Some(Token::Sqrt2)
                | Some(Token::Sqrt3)
                | Some(Token::Sqrt)
                | Some(Token::Open) => {
                    value *= self.unary()?;
                }
                _ => break,
            }
        }
        Ok(value)
    }

    fn unary(&mut self) -> Result<f64, String> {
        match self.peek() {
            Some(Token::Minus) => {
                self.advance();
                Ok(-self.unary()?)
            }
            Some(Token::Plus) => {
                self.advance();
                self.unary()
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<f64, String> {
        match self.advance() {
            Some(Token::Number(value)) => Ok(value),
            Some(Token::Pi) => Ok(std::f64::consts::PI),
            Some(Token::Sqrt2) => Ok(std::f64::consts::SQRT_2),
            Some(Token::Sqrt3) => Ok(3f64.sqrt()),
            Some(Token::Sqrt) => {
                match self.advance() {
                    Some(Token::Open) => {}
                    _ => return Err("sqrt needs parentheses: sqrt(...)".to_string()),
                }
                let inner = self.expression()?;
                self.expect_close()?;
                if inner < 0.0 {
                    return Err(format!("sqrt of negative value {inner}"));
                }
                Ok(inner.sqrt())
            }
            Some(Token::Open) => {
                let inner = self.expression()?;
                self.expect_close()?;
                Ok(inner)
            }
            other => Err(format!("expected a value, found {other:?}")),
        }
    }
}

/// Evaluates one real-valued expression.
pub fn parse(input: &str) -> Result<f64, String> {
    let tokens = tokenize(input)?;
    if tokens.is_empty() {
        return Err("empty expression".to_string());
    }
    let mut parser = Parser { tokens, pos: 0 };
    let value = parser.expression()?;
    if parser.pos != parser.tokens.len() {
        return Err(format!("trailing input in `{input}`"));
    }
    if !value.is_finite() {
        return Err(format!("`{input}` does not evaluate to a finite number"));
    }
    Ok(value)
}

/// Splits on commas and evaluates each piece.
pub fn parse_list(input: &str) -> Result<Vec<f64>, String> {
    input.split(',').map(|piece| parse(piece.trim())).collect()
}
