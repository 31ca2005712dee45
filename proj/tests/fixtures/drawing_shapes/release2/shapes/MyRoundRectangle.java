package shapes;

import java.awt.Color;
import java.awt.Graphics;

public class MyRoundRectangle extends MyShape {
    public MyRoundRectangle() {
        super();
    }

    public MyRoundRectangle(int x1, int y1, int x2, int y2, Color color) {
        super(x1, y1, x2, y2, color);
    }

    public int getUpperLeftX() { return Math.min(getX1(), getX2()); }
    public int getUpperLeftY() { return Math.min(getY1(), getY2()); }
    public int getWidth() { return Math.abs(getX1() - getX2()); }
    public int getHeight() { return Math.abs(getY1() - getY2()); }

    @Override
    public void draw(Graphics g) {
        g.setColor(getColor());
        g.drawRoundRect(getUpperLeftX(), getUpperLeftY(), getWidth(), getHeight(), 20, 20);
    }
}
