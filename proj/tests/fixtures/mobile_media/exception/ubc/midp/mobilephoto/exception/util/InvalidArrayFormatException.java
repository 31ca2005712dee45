package ubc.midp.mobilephoto.exception.util;

public class InvalidArrayFormatException extends Exception {
    private static final long serialVersionUID = 1L;

    public InvalidArrayFormatException() {
        super();
    }

    public InvalidArrayFormatException(String message) {
        super(message);
    }
}
